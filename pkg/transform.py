import argparse
import logging

from allennlp.common.util import import_module_and_submodules

from rieszkit import commands

import_module_and_submodules("rieszkit")

if __name__ == "__main__":

    logging.basicConfig(format='%(asctime)s - %(levelname)s - %(name)s - %(message)s',
                        level=logging.INFO)
    logger = logging.getLogger(__name__)

    parser = argparse.ArgumentParser(description="Exact maps between coefficient tables")
    parser.add_argument("input", type=str, help="Coefficient file to transform")
    parser.add_argument("--direction", required=True, type=str, choices=sorted(commands.DIRECTIONS),
                        help="Which map to apply")
    parser.add_argument("--out", required=True, type=str, help="Where to write the transformed coefficients")
    parser.add_argument("--m", default=None, type=int, help="Dimension, checked against the file")

    args = parser.parse_args()

    exit(commands.cmd_transform(args.input, args.direction, args.out, args.m))
