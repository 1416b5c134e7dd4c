import argparse
import logging

from allennlp.common.util import import_module_and_submodules

from rieszkit import commands, util

import_module_and_submodules("rieszkit")

if __name__ == "__main__":

    logging.basicConfig(format='%(asctime)s - %(levelname)s - %(name)s - %(message)s',
                        level=logging.INFO)
    logger = logging.getLogger(__name__)

    parser = argparse.ArgumentParser(description="Exact sweeps over the coefficient identities")
    parser.add_argument("--config", default="configs/params.json", type=str,
                        help="Configuration file with tolerances and sweep sizes")
    parser.add_argument("--out", default="reports/identities", type=str, help="Output directory for the report")
    parser.add_argument("--alpha-max", dest="alpha_max", default=None, type=int, help="Largest Riesz order swept")
    parser.add_argument("--dimensions", default=None, type=int, nargs='+', help="Dimensions m to sweep")
    parser.add_argument("--sweep-size", dest="sweep_size", default=None, type=int,
                        help="Random rational points per order for the factor identities")
    parser.add_argument("--seed", type=int, default=-1, help="seed for the randomised sweeps")

    args = parser.parse_args()

    overrides = {"identities.alpha_max": args.alpha_max, "identities.dimensions": args.dimensions,
                 "identities.sweep_size": args.sweep_size}
    try:
        config = util.merge_configs(args.config, None, overrides, args.seed)
    except Exception as error:
        logger.error("could not read %s: %s", args.config, error)
        exit(2)
    exit(commands.cmd_identities(config, args.out))
