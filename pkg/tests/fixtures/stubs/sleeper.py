#!/usr/bin/env python3
"""Stand-in for a prover that never answers: ignores SIGTERM and sleeps."""
import argparse
import os
import signal
import time

parser = argparse.ArgumentParser()
parser.add_argument('input')
parser.add_argument('--seconds', type=float, default=10.0)
parser.add_argument('--pidfile')
parser.add_argument('--record')
args = parser.parse_args()

signal.signal(signal.SIGTERM, signal.SIG_IGN)
if args.pidfile:
    with open(args.pidfile, 'w') as f:
        f.write(str(os.getpid()))
if args.record:
    with open(args.record, 'a') as f:
        f.write(f'sleeper {args.input}\n')

time.sleep(args.seconds)
print('% SZS status GaveUp')
