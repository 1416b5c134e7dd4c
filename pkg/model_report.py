import argparse
import logging

from allennlp.common.util import import_module_and_submodules

from rieszkit import commands, util

import_module_and_submodules("rieszkit")

if __name__ == "__main__":

    logging.basicConfig(format='%(asctime)s - %(levelname)s - %(name)s - %(message)s',
                        level=logging.INFO)
    logger = logging.getLogger(__name__)

    parser = argparse.ArgumentParser(description="Compare spectral sums, fits and exact tables on a model manifold")
    parser.add_argument("--config", default="configs/params.json", type=str,
                        help="Configuration file with tolerances and fit windows")
    parser.add_argument("--manifold_config", default="", type=str,
                        help="Manifold spec, e.g. configs/circle.json")
    parser.add_argument("--out", default="reports/model", type=str, help="Output directory for the report bundle")
    parser.add_argument("--manifold", default=None, type=str, help="line, half_line, circle or interval")
    parser.add_argument("--L", default=None, type=float, help="Length parameter of circle and interval")
    parser.add_argument("--bc", default=None, type=str, help="dirichlet or neumann")
    parser.add_argument("--observable", default=None, type=str, choices=["trace", "diagonal"])
    parser.add_argument("--x", default=None, type=float)
    parser.add_argument("--y", default=None, type=float)
    parser.add_argument("--alpha", default=None, type=int, nargs='+', help="Riesz orders of the mean fits")
    parser.add_argument("--tol", default=None, type=float, help="Relative tolerance of the coefficient fits")
    parser.add_argument("--seed", type=int, default=-1, help="seed recorded in the report")

    args = parser.parse_args()

    if args.manifold_config == '' and args.manifold is None:
        logger.error('specifying --manifold_config or --manifold is required')
        exit(2)

    overrides = {"manifold.manifold": args.manifold, "manifold.L": args.L, "manifold.bc": args.bc,
                 "manifold.observable": args.observable, "manifold.x": args.x, "manifold.y": args.y,
                 "means.alpha": args.alpha, "tolerances.fit_relative": args.tol}
    try:
        config = util.merge_configs(args.config, args.manifold_config or None, overrides, args.seed)
    except Exception as error:
        logger.error("could not read the configuration: %s", error)
        exit(2)
    exit(commands.cmd_model_report(config, args.out))
