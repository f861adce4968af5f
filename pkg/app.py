#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import sys

from ogp.config import Config
from ogp.logger import setup_logging

# 设置日志系统
config = Config()
logger = setup_logging(config.LOG)


def _commands():
    from ogp.cli.main import main as ogp_main
    from ogp.ddfa.cli import main as ddfa_main
    from ogp.filters.cli import main_gcl, main_geogebra, main_jgex
    from ogp.gasc.cli import main as gasc_main
    from ogp.repository.cli import ingest_main, repod_main

    return {
        'ogp': ogp_main,
        'filterGCLtoFOF': main_gcl,
        'filterJGEXtoFOF': main_jgex,
        'filterGEOGEBRAtoFOF': main_geogebra,
        'ddfa': ddfa_main,
        'repod': repod_main,
        'ingest': ingest_main,
        'gasc': gasc_main,
    }


def show_help():
    """显示帮助信息"""
    help_text = """
Open Geometry Prover - 几何定理证明框架

用法:
    python app.py <命令> [参数...]

命令:
    ogp                   证明猜想（ogp -h 查看详细用法）
    filterGCLtoFOF        GCL -> FOF 转换
    filterJGEXtoFOF       JGEX -> FOF 转换
    filterGEOGEBRAtoFOF   GeoGebra XML -> FOF 转换
    ddfa                  原生演绎数据库证明器
    repod                 启动题库服务
    ingest                向题库添加题目
    gasc                  运行证明器竞赛
    --help                显示此帮助信息

示例:
    python app.py ogp varignon.gcl
    python app.py ogp -t 10 varignon.fof ddfa
    python app.py repod --root tgtp --port 7331
    python app.py gasc competition.json --format markdown

环境变量:
    参见 .env.example（OGP_PROVERS, OGP_TGTP_ENDPOINT, LOG_LEVEL 等）
    """
    print(help_text)


if __name__ == '__main__':
    """
    Open Geometry Prover 主入口点
    """
    try:
        logger.debug(f"启动 Open Geometry Prover，参数: {sys.argv}")

        if len(sys.argv) > 1:
            command = sys.argv[1]
            commands = _commands()

            if command == '--help':
                show_help()
            elif command in commands:
                logger.debug(f"执行命令: {command}")
                sys.exit(commands[command](sys.argv[2:]))
            else:
                error_msg = f"未知命令: {command}"
                print(f"❌ {error_msg}", file=sys.stderr)
                print("使用 --help 查看可用命令", file=sys.stderr)
                logger.error(error_msg)
                sys.exit(4)
        else:
            print("❌ 请指定一个命令", file=sys.stderr)
            logger.warning("未指定命令参数")
            show_help()
            sys.exit(4)

    except KeyboardInterrupt:
        print("\n程序被用户中断", file=sys.stderr)
        logger.info("程序被用户中断 (Ctrl+C)")
        sys.exit(130)
    except Exception as e:
        error_msg = f"程序执行出错: {e}"
        print(f"❌ {error_msg}", file=sys.stderr)
        logger.error(error_msg, exc_info=True)
        sys.exit(4)
