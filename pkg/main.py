import argparse
import sys

from console import Console
from errors import BaseReductionException
from logger import Logger


if __name__ == '__main__':
    parser = argparse.ArgumentParser(prog="reduxcorr", description="Phonetic reduction correlation command line App")
    parser.add_argument("command", help="pipeline step to run", choices=list(Console.COMMANDS.keys()))
    parser.add_argument("-c", "--config", help="run config location", required=True)
    parser.add_argument("-o", "--out", help="output location, overrides the config's out", default=None)
    parser.add_argument("-v", "--verbose", help="log debug records to the console", action="store_true")

    args = parser.parse_args()
    Logger.set_verbose(args.verbose)

    try:
        Console(
            command=args.command,
            config_path=args.config,
            out=args.out
        ).run()
    except BaseReductionException as e:
        print(f"reduxcorr {args.command}: {e}", file=sys.stderr)
        sys.exit(1)
