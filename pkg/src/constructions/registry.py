"""
Builder Registry
Maps family names (as used by the CLI) to builders and their claim descriptors.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

from ..core.exceptions import ConstructionError
from ..utils.logging import get_logger
from . import algebraic, cayley, random_models
from .descriptor import Construction

logger = get_logger(__name__)


@dataclass(frozen=True)
class BuilderSpec:
    """A buildable family: typed parameters and the build function."""

    family: str
    params: Dict[str, type]
    build: Callable[..., Construction]
    help: str = ""
    optional: Optional[Dict[str, Any]] = None


def _paley(q: int) -> Construction:
    g = algebraic.paley(q)
    return Construction(g, algebraic.describe_paley(q, g))


def _inner_product(k: int) -> Construction:
    g = algebraic.inner_product_graph(k)
    return Construction(g, algebraic.describe_inner_product(k, g))


def _dgt(q: int, k: int) -> Construction:
    g = algebraic.dgt_graph(q, k)
    return Construction(g, algebraic.describe_dgt(q, k, g))


def _pg_polarity(q: int, t: int) -> Construction:
    g = algebraic.pg_polarity(q, t)
    return Construction(g, algebraic.describe_pg_polarity(q, t, g))


def _norm_graph(p: int, t: int) -> Construction:
    g = algebraic.norm_graph(p, t)
    return Construction(g, algebraic.describe_norm_graph(p, t, g))


def _power_residue(q: int, k: int) -> Construction:
    g = cayley.power_residue_cayley(q, k)
    return Construction(g, cayley.describe_power_residue(q, k, g))


def _alon(k: int) -> Construction:
    g = cayley.alon_triangle_free(k)
    return Construction(g, cayley.describe_alon(k, 1, g))


def _alon_general(k: int, h: int) -> Construction:
    g = cayley.alon_general(k, h)
    return Construction(g, cayley.describe_alon(k, h, g))


def _lps(p: int, q: int) -> Construction:
    g = cayley.lps(p, q)
    return Construction(g, cayley.describe_lps(p, q, g))


def _circulant(n: int, steps: str) -> Construction:
    """Cayley graph of Z_n with S = {+-s : s in steps}."""
    values = sorted({int(s) % n for s in steps.split(",") if s.strip()})
    connection = sorted({s for v in values for s in (v, (-v) % n)})
    g, predicted = cayley.cayley_abelian([n], [[s] for s in connection])
    return Construction(
        g, cayley.describe_cayley_abelian([n], [[s] for s in connection], g, predicted)
    )


def _hypercube(dim: int) -> Construction:
    basis = [[1 if i == j else 0 for i in range(dim)] for j in range(dim)]
    g, predicted = cayley.cayley_abelian([2] * dim, basis)
    return Construction(g, cayley.describe_cayley_abelian([2] * dim, basis, g, predicted))


def _gnp(n: int, p: float, seed: int = 0) -> Construction:
    g = random_models.gnp(n, p, seed)
    return Construction(g, random_models.describe_gnp(n, p, seed, g))


def _random_regular(n: int, d: int, seed: int = 0) -> Construction:
    g = random_models.random_regular(n, d, seed)
    return Construction(g, random_models.describe_random_regular(n, d, seed, g))


BUILDERS: Dict[str, BuilderSpec] = {
    spec.family: spec
    for spec in [
        BuilderSpec("paley", {"q": int}, _paley, "Paley graph on GF(q), q = 1 mod 4"),
        BuilderSpec("inner_product", {"k": int}, _inner_product, "H_k on odd binary k-vectors"),
        BuilderSpec("dgt", {"q": int, "k": int}, _dgt, "k parallel classes of lines in GF(q)^2"),
        BuilderSpec(
            "pg_polarity", {"q": int, "t": int}, _pg_polarity, "polarity graph of PG(t, q)"
        ),
        BuilderSpec(
            "norm_graph", {"p": int, "t": int}, _norm_graph, "norm graph GF(p^(t-1)) x GF(p)*"
        ),
        BuilderSpec(
            "power_residue", {"q": int, "k": int}, _power_residue, "k-th power Cayley graph"
        ),
        BuilderSpec("alon", {"k": int}, _alon, "triangle-free Cayley graph of Z_2^(3k)"),
        BuilderSpec("alon_general", {"k": int, "h": int}, _alon_general, "no odd cycles <= 2h+1"),
        BuilderSpec("lps", {"p": int, "q": int}, _lps, "PSL(2, q) Ramanujan graph"),
        BuilderSpec("circulant", {"n": int, "steps": str}, _circulant, "Cayley graph of Z_n"),
        BuilderSpec("hypercube", {"dim": int}, _hypercube, "Cayley graph of Z_2^dim"),
        BuilderSpec("gnp", {"n": int, "p": float}, _gnp, "random graph G(n, p)", {"seed": 0}),
        BuilderSpec(
            "random_regular",
            {"n": int, "d": int},
            _random_regular,
            "configuration model",
            {"seed": 0},
        ),
    ]
}


def family_names() -> List[str]:
    return sorted(BUILDERS)


def build(family: str, **params: Any) -> Construction:
    """Build a registered family from keyword parameters."""
    spec = BUILDERS.get(family)
    if spec is None:
        choices = ", ".join(family_names())
        raise ConstructionError(f"Unknown family {family!r}; choose from {choices}")
    missing = [name for name in spec.params if name not in params]
    if missing:
        raise ConstructionError(f"{family} needs parameter(s): {', '.join(missing)}")
    known = set(spec.params) | set(spec.optional or {})
    unknown = sorted(set(params) - known)
    if unknown:
        raise ConstructionError(f"{family} does not take parameter(s): {', '.join(unknown)}")
    typed = {name: spec.params[name](params[name]) for name in spec.params}
    for name, default in (spec.optional or {}).items():
        typed[name] = type(default)(params.get(name, default))
    logger.info(f"Building {family} with {typed}")
    return spec.build(**typed)
