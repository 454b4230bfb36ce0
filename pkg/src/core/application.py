"""
Pseudograph Core Application
Command-line application that wires builders, spectra, oracles, audits and experiments.
"""

import argparse
import json
import logging
import math
import sys
from collections import Counter
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from .. import __version__
from ..audits import claims_verify, full_report, pattern_graph
from ..audits.report import AuditReport, Finding
from ..constructions.descriptor import ConstructionDescriptor
from ..constructions.registry import BUILDERS, build
from ..graphs.core import Graph
from ..graphs.io import format_edge_list, load_graph, write_dot, write_edge_list, write_snapshot
from ..oracles import (
    MatchingMode,
    OracleResult,
    OracleStatus,
    count_hamilton_cycles,
    count_spanning_trees,
    count_subgraph_copies,
    exact_alpha,
    exact_chi,
    exact_clique,
    exact_maxcut,
    greedy_coloring,
    greedy_independent,
    greedy_turan_partition,
    hamilton_search,
    local_search_maxcut,
    matching,
    min_vertex_cover,
    triangle_factor_exact,
    turan_exact,
)
from ..randomlab import (
    PhaseCurve,
    connectivity_window_experiment,
    degree_threshold_experiment,
    enumeration_bounds_check,
    giant_component_experiment,
    mst_experiment,
    parse_grid,
)
from ..spectral import spectral_summary, srg_detect
from ..utils.config import ConfigManager, RunConfig
from ..utils.logging import audit_logger, log_exception, setup_logging
from ..utils.schemas import ClaimsDocument, load_claims, validate_artifact
from ..utils.serialization import dumps_stable, write_json
from .exceptions import ClaimsSchemaError, PseudographError, SoundnessViolation, UsageError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOUNDNESS = 2

GRAPH_WRITERS = {"el": write_edge_list, "dot": write_dot, "msgpack": write_snapshot}
DEFAULT_GIANT_GRID = "0.5:3.0:0.25"
DEFAULT_DEGREE_OFFSETS = "-4:4:1"


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage errors as exceptions instead of exiting with 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def claims_path_for(graph_path: Path) -> Path:
    """X.el -> X.claims.json, next to the graph."""
    return graph_path.with_name(f"{graph_path.stem}.claims.json")


def _graph_block(g: Graph, source: str) -> Dict[str, Any]:
    return {"name": g.label, "n": g.n, "m": g.m, "source": source}


class PseudographApp:
    """Main pseudograph application class."""

    def __init__(self, config_file: Optional[Path] = None):
        # Initialize logging first; run() reconfigures it from the flags
        setup_logging()
        self.logger = logging.getLogger(__name__)

        self.config_manager = ConfigManager(config_file, persist=False)
        self.parser = self._build_parser()

    @property
    def config(self) -> RunConfig:
        return self.config_manager.config

    def _build_parser(self) -> argparse.ArgumentParser:
        # SUPPRESS keeps a subcommand from overwriting flags given before it
        common = _Parser(add_help=False)
        common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
        common.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS)
        common.add_argument("--log-file", default=argparse.SUPPRESS, help="also log to this file")
        common.add_argument("--config", default=argparse.SUPPRESS, help="JSON run configuration")
        common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
        common.add_argument("--dense-cap", type=int, default=argparse.SUPPRESS)

        parser = _Parser(prog="pseudograph", parents=[common], description=__doc__)
        parser.add_argument("--version", action="version", version=f"pseudograph {__version__}")
        commands = parser.add_subparsers(dest="command", metavar="COMMAND")
        commands.required = True

        gen = commands.add_parser("gen", parents=[common], help="build a graph family")
        families = gen.add_subparsers(dest="family", metavar="FAMILY")
        families.required = True
        for family, spec in sorted(BUILDERS.items()):
            builder = families.add_parser(family, parents=[common], help=spec.help)
            for name, kind in spec.params.items():
                builder.add_argument(f"--{name}", type=kind, required=True)
            builder.add_argument("--out", help="graph file (stdout edge list when omitted)")
            builder.add_argument("--format", choices=sorted(GRAPH_WRITERS), default="el")
            builder.add_argument("--claims", help="claims file (default: <out stem>.claims.json)")
            builder.set_defaults(handler=self.cmd_gen)

        spectrum = commands.add_parser("spectrum", parents=[common], help="eigenvalues and lambda")
        spectrum.add_argument("graph")
        spectrum.add_argument("--json", action="store_true", help="JSON instead of text")
        spectrum.add_argument("--out")
        spectrum.set_defaults(handler=self.cmd_spectrum)

        oracle = commands.add_parser("oracle", parents=[common], help="run one exact oracle")
        oracle.add_argument("name", choices=sorted(self.ORACLES))
        oracle.add_argument("graph")
        oracle.add_argument("--t", type=int, default=3, help="clique order for turan oracles")
        oracle.add_argument("--pattern", default="K3", help="pattern for the subgraph oracle")
        oracle.add_argument("--induced", action="store_true")
        oracle.add_argument("--out")
        oracle.set_defaults(handler=self.cmd_oracle)

        audit = commands.add_parser("audit", parents=[common], help="full audit report")
        audit.add_argument("graph")
        audit.add_argument("--claims", help="claims file (default: <graph stem>.claims.json)")
        audit.add_argument("--no-claims", action="store_true")
        audit.add_argument("--pattern", action="append", dest="patterns")
        audit.add_argument("--report")
        audit.set_defaults(handler=self.cmd_audit)

        claims = commands.add_parser("claims", parents=[common], help="re-verify builder claims")
        claims.add_argument("graph")
        claims.add_argument("claims_file", nargs="?")
        claims.add_argument("--report")
        claims.set_defaults(handler=self.cmd_claims)

        enum = commands.add_parser("enum", parents=[common], help="enumeration bounds")
        self._add_enum_arguments(enum, positional=True)

        mc = commands.add_parser("mc", parents=[common], help="Monte Carlo on random subgraphs")
        experiments = mc.add_subparsers(dest="experiment", metavar="EXPERIMENT")
        experiments.required = True
        for name, handler in [
            ("giant", self.cmd_mc_giant),
            ("window", self.cmd_mc_window),
            ("mst", self.cmd_mc_mst),
            ("degree", self.cmd_mc_degree),
        ]:
            experiment = experiments.add_parser(name, parents=[common])
            experiment.add_argument("--graph", required=True)
            experiment.add_argument("--trials", type=int, default=100)
            experiment.add_argument("--grid")
            experiment.add_argument("--out")
            experiment.set_defaults(handler=handler)
            if name == "window":
                experiment.add_argument("--epsilon", type=float)
            if name == "degree":
                experiment.add_argument("--hamilton", action="store_true")
        self._add_enum_arguments(experiments.add_parser("enum", parents=[common]), positional=False)

        validate = commands.add_parser("validate", parents=[common], help="check files")
        validate.add_argument("paths", nargs="+")
        validate.add_argument("--kind", help="artifact kind for JSON files")
        validate.set_defaults(handler=self.cmd_validate)
        return parser

    def _add_enum_arguments(self, parser: argparse.ArgumentParser, positional: bool):
        if positional:
            parser.add_argument("graph")
        else:
            parser.add_argument("--graph", required=True)
        parser.add_argument("--epsilon", type=float, default=0.0)
        parser.add_argument("--p", type=float, help="density (default 2|E|/(n(n-1)))")
        parser.add_argument("--report")
        parser.set_defaults(handler=self.cmd_enum)

    def _configure(self, args: argparse.Namespace):
        """Logging and run configuration from the parsed flags."""
        level = logging.INFO
        if getattr(args, "verbose", False):
            level = logging.DEBUG
        elif getattr(args, "quiet", False):
            level = logging.WARNING
        log_file = getattr(args, "log_file", None)
        setup_logging(level=level, file_output=log_file is not None, log_file=log_file)

        config_file = getattr(args, "config", None)
        if config_file is not None:
            if not Path(config_file).is_file():
                raise FileNotFoundError(f"Configuration file not found: {config_file}")
            self.config_manager = ConfigManager(Path(config_file), persist=False)

        self.config_manager.update(
            {
                "seed": getattr(args, "seed", None),
                "threads": getattr(args, "threads", None),
                "dense_cap": getattr(args, "dense_cap", None),
                "subcommand": args.command,
                "graph_source": getattr(args, "graph", None),
            }
        )
        if self.config.threads < 1:
            raise UsageError(f"--threads must be at least 1, got {self.config.threads}")

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Parse argv, run one subcommand and return its exit code."""
        try:
            args = self.parser.parse_args(argv)
            self._configure(args)
            self.logger.debug(f"Running {args.command} with seed {self.config.seed}")
            return args.handler(args)

        except SystemExit as e:
            # --help and --version
            return int(e.code or 0)
        except SoundnessViolation as e:
            self.logger.error(f"Soundness alarm: {e}")
            return EXIT_SOUNDNESS
        except FileNotFoundError as e:
            self.logger.error(f"File not found: {e}")
            return EXIT_USAGE
        except ClaimsSchemaError as e:
            self.logger.error(f"Invalid claims file: {e}")
            return EXIT_USAGE
        except (PseudographError, ValueError, ValidationError) as e:
            self.logger.error(f"Failed to run command: {e}")
            return EXIT_USAGE
        except OSError as e:
            log_exception(self.logger, f"I/O failure: {e}")
            return EXIT_USAGE

    def _provenance(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        payload["config"] = self.config.to_dict()
        payload["version"] = __version__
        return payload

    def _emit(self, payload: Dict[str, Any], out: Optional[str]):
        """Write a JSON artifact to a file, or to stdout."""
        digits = self.config.float_digits
        if out:
            self.config.output_paths["json"] = out
            write_json(out, payload, digits)
            self.logger.info(f"Wrote {out}")
        else:
            sys.stdout.write(dumps_stable(payload, digits))

    def _load(self, source: str) -> Graph:
        graph = load_graph(source)
        self.logger.info(f"Loaded {graph.label}: n = {graph.n}, m = {graph.m}")
        return graph

    def _descriptor_for(
        self, graph_path: str, claims: Optional[str]
    ) -> Optional[ConstructionDescriptor]:
        path = Path(claims) if claims else claims_path_for(Path(graph_path))
        if claims is None and not path.is_file():
            self.logger.info(f"No claims file next to {graph_path}; auditing without claims")
            return None
        document = load_claims(path)
        self.logger.info(f"Claims from {path}: {len(document.claims)} claim(s)")
        return document.to_descriptor()

    # Subcommands

    def cmd_gen(self, args: argparse.Namespace) -> int:
        spec = BUILDERS[args.family]
        params = {name: getattr(args, name) for name in spec.params}
        if "seed" in (spec.optional or {}):
            params["seed"] = self.config.seed
        self.config.graph_source = args.family
        self.config.builder_params = dict(params)
        construction = build(args.family, **params)
        graph, descriptor = construction.graph, construction.descriptor

        if not args.out:
            sys.stdout.write(format_edge_list(graph))
            return EXIT_OK

        out = Path(args.out)
        GRAPH_WRITERS[args.format](graph, out)
        claims = Path(args.claims) if args.claims else claims_path_for(out)
        self.config.output_paths.update({"graph": str(out), "claims": str(claims)})
        document = ClaimsDocument.from_descriptor(descriptor, self.config.to_dict(), __version__)
        write_json(claims, document.model_dump(mode="json"), self.config.float_digits)
        self.logger.info(f"Wrote {out} and {len(document.claims)} claim(s) to {claims}")
        return EXIT_OK

    def cmd_spectrum(self, args: argparse.Namespace) -> int:
        graph = self._load(args.graph)
        summary = spectral_summary(graph, self.config.dense_cap, self.config.extremal_tolerance)
        d = graph.regular_degree
        payload: Dict[str, Any] = {
            "graph": _graph_block(graph, args.graph),
            "method": summary.method,
            "lambda_1": summary.lambda_1,
            "lambda": summary.lambda_abs,
            "lambda_min": summary.lambda_min,
            "spectral_gap": summary.lambda_1 - summary.lambda_abs,
            "ramanujan": None,
            "srg": None,
        }
        if d is not None and d >= 1 and graph.loop_count == 0:
            ramanujan_bound = 2 * math.sqrt(d - 1) + self.config.solver_tolerance
            payload["ramanujan"] = summary.lambda_abs <= ramanujan_bound
            params = srg_detect(graph)
            payload["srg"] = list(params.as_tuple()) if params else None
        if summary.spectrum is not None:
            spectrum = summary.spectrum
            payload["lambda_2"] = spectrum.lambda_2
            payload["max_residual"] = spectrum.max_residual
            payload["eigenvalues"] = spectrum.eigenvalues.tolist()
            payload["multiplicities"] = [
                [value, count]
                for value, count in spectrum.multiplicities(self.config.multiplicity_tolerance)
            ]

        if args.json or args.out:
            self._emit(self._provenance(payload), args.out)
            return EXIT_OK

        digits = self.config.float_digits
        lines = [f"graph {graph.label} n={graph.n} m={graph.m}", f"method {summary.method}"]
        for key in ("lambda_1", "lambda_2", "lambda", "lambda_min", "spectral_gap", "max_residual"):
            if key in payload:
                lines.append(f"{key} {payload[key]:.{digits}g}")
        if payload["srg"] is not None:
            lines.append("srg " + " ".join(str(v) for v in payload["srg"]))
        if "eigenvalues" in payload:
            lines.append("eigenvalues")
            lines.extend(f"{value:.{digits}g}" for value in payload["eigenvalues"])
        sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK

    def _spectral_pair(self, graph: Graph):
        summary = spectral_summary(graph, self.config.dense_cap, self.config.extremal_tolerance)
        d = float(graph.degrees.mean()) if graph.n else 0.0
        return d, summary.lambda_abs

    def _wrap(self, oracle: str, value: Any, witness: Any = None, notes=None) -> OracleResult:
        return OracleResult(oracle, OracleStatus.FOUND, value=value, witness=witness, notes=notes)

    ORACLES: Dict[str, Callable[..., OracleResult]] = {
        "alpha": lambda self, g, a: exact_alpha(g, self.config.alpha_budget),
        "clique": lambda self, g, a: exact_clique(g, self.config.alpha_budget),
        "chi": lambda self, g, a: exact_chi(g, self.config.chi_budget),
        "vertex_cover": lambda self, g, a: min_vertex_cover(g, self.config.alpha_budget),
        "maxcut": lambda self, g, a: exact_maxcut(g, self.config.maxcut_exact_max_n),
        "maxcut_local": lambda self, g, a: local_search_maxcut(g, self.config.seed),
        "hamilton": lambda self, g, a: hamilton_search(g, self.config.hamilton_budget),
        "hamilton_count": lambda self, g, a: count_hamilton_cycles(g),
        "matching": lambda self, g, a: matching(g, MatchingMode.EXISTS_PERFECT, self.config.seed),
        "matching_count": lambda self, g, a: matching(
            g, MatchingMode.COUNT_PERFECT, self.config.seed
        ),
        "triangle_factor": lambda self, g, a: triangle_factor_exact(g),
        "turan": lambda self, g, a: turan_exact(g, a.t, self.config.turan_budget),
        "turan_greedy": lambda self, g, a: self._turan_greedy(g, a.t),
        "spanning_trees": lambda self, g, a: self._wrap("spanning_trees", count_spanning_trees(g)),
        "subgraph": lambda self, g, a: self._wrap(
            "subgraph",
            count_subgraph_copies(g, pattern_graph(a.pattern), induced=a.induced),
            notes={"pattern": a.pattern, "induced": a.induced},
        ),
        "greedy_independent": lambda self, g, a: greedy_independent(
            g, None, *self._spectral_pair(g)
        ),
        "greedy_coloring": lambda self, g, a: greedy_coloring(g, *self._spectral_pair(g)),
    }

    def _turan_greedy(self, graph: Graph, t: int) -> OracleResult:
        partition = greedy_turan_partition(graph, t)
        return self._wrap(
            "turan_greedy", partition.cross_edges, partition.parts, {"moves": partition.moves}
        )

    def cmd_oracle(self, args: argparse.Namespace) -> int:
        graph = self._load(args.graph)
        result = self.ORACLES[args.name](self, graph, args)
        self.logger.info(f"{args.name} on {graph.label}: {result.status.value} {result.value}")
        payload = result.to_dict()
        payload["graph"] = _graph_block(graph, args.graph)
        self._emit(self._provenance(payload), args.out)
        return EXIT_OK

    def _finish_report(self, report: AuditReport, out: Optional[str]) -> int:
        """Write the report and turn failed findings into exit code 2."""
        self.config.output_paths.update({"report": out} if out else {})
        if out:
            report.config = self.config.to_dict()
            self._emit(report.to_dict(), out)
        else:
            counts = report.verdict_counts()
            lines = [f"{verdict} {count}" for verdict, count in counts.items()]
            lines.extend(f"fail {f.id}: {f.lhs} > {f.rhs}" for f in report.violations())
            sys.stdout.write("\n".join(lines) + "\n")
        report.raise_for_violations()
        return EXIT_OK

    def cmd_audit(self, args: argparse.Namespace) -> int:
        graph = self._load(args.graph)
        descriptor = None if args.no_claims else self._descriptor_for(args.graph, args.claims)
        patterns = tuple(args.patterns) if args.patterns else ("K3",)
        report = full_report(graph, self.config, descriptor, patterns)
        report.graph["source"] = args.graph
        return self._finish_report(report, args.report)

    def cmd_claims(self, args: argparse.Namespace) -> int:
        graph = self._load(args.graph)
        path = args.claims_file or str(claims_path_for(Path(args.graph)))
        descriptor = load_claims(path).to_descriptor()
        findings = claims_verify(graph, descriptor)
        report = AuditReport(
            graph={**_graph_block(graph, args.graph), "descriptor": descriptor.label},
            header={"n": graph.n, "claims": path},
            claims=findings,
            config=self.config.to_dict(),
        )
        audit_logger.report_summary(graph.label, dict(Counter(f.verdict.value for f in findings)))
        if args.report:
            self._emit(report.to_dict(), args.report)
        else:
            lines = [f"{f.id} {f.verdict.value}" for f in findings]
            sys.stdout.write("\n".join(lines) + "\n")
        report.raise_for_violations()
        return EXIT_OK

    def cmd_enum(self, args: argparse.Namespace) -> int:
        graph = self._load(args.graph)
        findings: List[Finding] = enumeration_bounds_check(graph, args.epsilon, args.p, self.config)
        report = AuditReport(
            graph=_graph_block(graph, args.graph),
            header={"n": graph.n, "m": graph.m, "epsilon": args.epsilon, "p": args.p},
            findings=findings,
            config=self.config.to_dict(),
        )
        return self._finish_report(report, args.report)

    def _curve(self, curve: PhaseCurve, out: Optional[str]) -> int:
        self._emit(self._provenance(curve.to_dict()), out)
        return EXIT_OK

    def cmd_mc_giant(self, args: argparse.Namespace) -> int:
        graph = self._load(args.graph)
        grid = parse_grid(args.grid or DEFAULT_GIANT_GRID)
        curve = giant_component_experiment(graph, grid, args.trials, self.config.seed, self.config)
        return self._curve(curve, args.out)

    def cmd_mc_window(self, args: argparse.Namespace) -> int:
        if not args.grid:
            raise UsageError("mc window needs --grid p_min:p_max:step")
        graph = self._load(args.graph)
        curve = connectivity_window_experiment(
            graph, parse_grid(args.grid), args.trials, self.config.seed, args.epsilon, self.config
        )
        return self._curve(curve, args.out)

    def cmd_mc_mst(self, args: argparse.Namespace) -> int:
        graph = self._load(args.graph)
        estimate = mst_experiment(graph, args.trials, self.config.seed, self.config)
        summary: Dict[str, Any] = {"tolerance": self.config.mst_relative_tolerance}
        if estimate.reference:
            summary["relative_error"] = abs(estimate.mean - estimate.reference) / estimate.reference
        curve = PhaseCurve(
            "mst", "n", [float(graph.n)], [estimate], self.config.seed, summary=summary
        )
        return self._curve(curve, args.out)

    def cmd_mc_degree(self, args: argparse.Namespace) -> int:
        graph = self._load(args.graph)
        offsets = parse_grid(args.grid or DEFAULT_DEGREE_OFFSETS)
        curve = degree_threshold_experiment(
            graph, args.trials, self.config.seed, offsets, args.hamilton, self.config
        )
        return self._curve(curve, args.out)

    def cmd_validate(self, args: argparse.Namespace) -> int:
        """Edge lists (and other graph files) parse; JSON artifacts match their schema."""
        failures = 0
        for raw in args.paths:
            path = Path(raw)
            try:
                if path.suffix.lower() == ".json":
                    if not path.is_file():
                        raise FileNotFoundError(f"Artifact not found: {path}")
                    data = json.loads(path.read_text(encoding="utf-8"))
                    model = validate_artifact(data, args.kind)
                    sys.stdout.write(f"ok {path} {type(model).__name__}\n")
                else:
                    graph = load_graph(path)
                    sys.stdout.write(f"ok {path} n={graph.n} m={graph.m}\n")
            except (PseudographError, ValueError, ValidationError, FileNotFoundError) as e:
                failures += 1
                self.logger.error(f"Invalid {path}: {e}")
        return EXIT_USAGE if failures else EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Console entry point."""
    app = PseudographApp()
    return app.run(argv)
