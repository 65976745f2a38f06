# mastergraph/cli.py
"""
Командная строка: analyze, steady, trees, evolve, simulate.

Отчёты печатаются в stdout как JSON, журнал идёт в stderr.
Коды выхода: 0 успех, 2 ошибка входных данных, 3 численное расхождение,
4 превышение лимитов.
"""
from typing import Optional, Sequence
import argparse
import json
import logging
import sys

from pydantic import BaseModel

from mastergraph.config import settings
from mastergraph.exceptions import MasterGraphError
from mastergraph.schemas.network import NetworkFormat
from mastergraph.services.analysis import NetworkAnalysisService, resolve_p0, resolve_start

logger = logging.getLogger("mastergraph.cli")


def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="Файл сети (edge_list или json)")
    common.add_argument("--format", choices=[f.value for f in NetworkFormat], default=None,
                        help="Формат входа; по умолчанию по расширению файла")
    common.add_argument("--output", default=None, help="Записать JSON в файл вместо stdout")
    common.add_argument("--p0", default=None, help="uniform | state:LABEL | файл или JSON-литерал")
    common.add_argument("--cap", type=int, default=None,
                        help=f"Предел перебора деревьев (по умолчанию {settings.TREE_CAP})")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_arguments()
    parser = argparse.ArgumentParser(
        prog="mastergraph",
        description="Long-term behavior of a Master equation from its transition network",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("analyze", parents=[common], help="Полный структурный анализ")
    commands.add_parser("steady", parents=[common], help="Базис стационарных состояний и предел")

    trees = commands.add_parser("trees", parents=[common], help="Входящие деревья")
    trees.add_argument("--root", default=None, help="Метка корня; по умолчанию все состояния")

    evolve = commands.add_parser("evolve", parents=[common], help="p_t = e^{Гt} p0")
    evolve.add_argument("--t", type=float, required=True, help="Момент времени t >= 0")

    simulate = commands.add_parser("simulate", parents=[common], help="Оценка p_T алгоритмом Гиллеспи")
    simulate.add_argument("--T", dest="horizon", type=float, required=True, help="Горизонт T > 0")
    simulate.add_argument("--n", dest="trajectories", type=int, required=True, help="Число траекторий")
    simulate.add_argument("--seed", type=int, required=True)
    simulate.add_argument("--start", required=True, help="Метка состояния или распределение")
    return parser


def run(args: argparse.Namespace):
    """Выполнить подкоманду и вернуть JSON-совместимый результат"""
    service = NetworkAnalysisService.from_file(args.input, args.format, cap=args.cap)
    net = service.net
    p0 = resolve_p0(net, args.p0) if args.p0 is not None else None

    if args.command == "analyze":
        return service.analyze(p0)
    if args.command == "steady":
        return service.steady(p0)
    if args.command == "trees":
        return service.trees(args.root)
    if args.command == "evolve":
        p0 = p0 if p0 is not None else resolve_p0(net, "uniform")
        return service.evolve(p0, args.t).p_t
    if args.command == "simulate":
        start = resolve_start(net, args.start)
        return service.simulate(args.horizon, args.trajectories, args.seed, start)
    raise ValueError(f"unknown command {args.command!r}")


def to_json(result) -> str:
    if isinstance(result, BaseModel):
        result = result.model_dump(mode="json", by_alias=True, exclude_none=True)
    return json.dumps(result, indent=2)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=settings.LOG_LEVEL,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        payload = to_json(run(args))
    except MasterGraphError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected failure in {args.command}: {str(e)}")
        return 3

    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(payload + "\n")
    else:
        print(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
