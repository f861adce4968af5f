#!/usr/bin/env python3
"""Stand-in for an SZS-speaking prover (Vampire-style log on stdout)."""
import argparse
import sys
import time

parser = argparse.ArgumentParser()
parser.add_argument('input')
parser.add_argument('--status', default='Theorem')
parser.add_argument('--elapsed', default='0.013')
parser.add_argument('--sleep', type=float, default=0.0)
parser.add_argument('--record')
parser.add_argument('--exit', type=int, default=0)
args, extra = parser.parse_known_args()

if args.record:
    with open(args.record, 'a') as f:
        f.write(f"szs {args.input} {' '.join(extra)}\n".rstrip() + '\n')
with open(args.input, encoding='utf-8') as f:
    first = f.readline().strip()

time.sleep(args.sleep)
print(f'% Problem starts with: {first}')
print(f'% SZS status {args.status} for {args.input}')
print(f'% Time elapsed: {args.elapsed} s')
sys.exit(args.exit)
