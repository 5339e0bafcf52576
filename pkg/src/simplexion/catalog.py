"""Printed solution families and a harness that instantiates and verifies them.

The families live in ``data/catalog.json``; set ``SIMPLEXION_CATALOG`` (or pass
``path``) to load another file with the same schema::

    {"families": [{"id", "n", "section", "A": [[expr]], "B": [expr],
                   "params": {name: "free" | "unit" | "unit_ne1"},
                   "moduli"?: [D...], "exclude"?: [cond...],
                   "pre_gauge"?: {"B": [expr], "params": {...}, "v"?: expr}}],
     "aliases": {short_id: id}}
"""
from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from . import expr
from .errors import BudgetExceeded, DomainViolation, NotAUnit
from .linalg import MatZd, VecZd, is_invertible, is_prime
from .solution import AffineSolution, tensor_ok_batch, to_index_map, verify_affine
from .structure import build_system, products_batch
from .symmetry import gauge_transform, orbit
from .zmod import unit_values

ENV_VAR = "SIMPLEXION_CATALOG"
DOMAINS = ("free", "unit", "unit_ne1")
# exhaustive validation refuses parameter spaces larger than this
MAX_EXHAUSTIVE = 200_000


@dataclass(frozen=True)
class CatalogFamily:
    id: str
    n: int
    A: tuple[tuple[str, ...], ...]
    B: tuple[str, ...]
    params: dict
    section: str = ""
    moduli: tuple[int, ...] | None = None
    exclude: tuple[str, ...] = ()
    pre_gauge: dict | None = None
    note: str = ""
    # as printed, when the transcription corrects a misprint (see ``erratum``)
    printed: dict | None = None
    erratum: str = ""

    @property
    def generic(self) -> bool:
        return self.moduli is None

    def param_names(self) -> list[str]:
        return list(self.params)

    def allows_modulus(self, D: int) -> bool:
        return self.moduli is None or D in self.moduli


@dataclass
class ValidationReport:
    family: str
    D: int
    instances_tested: int = 0
    tensor_checked: int = 0
    excluded: int = 0
    pre_gauge_checked: int = 0
    failures: list[tuple[dict, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"family": self.family, "d": self.D, "instances_tested": self.instances_tested,
                "tensor_checked": self.tensor_checked, "excluded": self.excluded,
                "pre_gauge_checked": self.pre_gauge_checked, "passed": self.passed,
                "failures": [{"params": p, "diagnostic": m} for p, m in self.failures]}


class Catalog:
    def __init__(self, families: list[CatalogFamily], aliases: dict[str, str]):
        self.families = {f.id: f for f in families}
        self.aliases = dict(aliases)
        self._index: dict[tuple[int, int], dict] = {}

    def __iter__(self):
        return iter(self.families.values())

    def __len__(self):
        return len(self.families)

    def resolve(self, fid: str) -> str:
        fid = self.aliases.get(fid, fid)
        if fid not in self.families:
            raise KeyError(f"unknown family {fid!r}")
        return fid

    def get(self, fid: str) -> CatalogFamily:
        return self.families[self.resolve(fid)]

    def of_order(self, n: int) -> list[CatalogFamily]:
        return [f for f in self if f.n == n]

    def group(self, prefix: str) -> list[CatalogFamily]:
        """Every member of a printed subsection, e.g. ``"4-19"`` -> 4-19a, 4-19b."""
        if prefix == "4-21":
            prefix = "4-D2-"
        return [f for f in self if f.id == prefix or
                (f.id.startswith(prefix) and (prefix.endswith("-") or f.id[len(prefix):].isalpha()))]

    def index(self, n: int, D: int) -> dict:
        """Map (A, B) -> first (family id, assignment) instantiating it at D."""
        key = (n, D)
        if key not in self._index:
            idx: dict = {}
            for f in self.of_order(n):
                if not f.allows_modulus(D):
                    continue
                for params in assignments(f, D):
                    try:
                        s = instantiate(f, params, D)
                    except NotAUnit:
                        continue
                    idx.setdefault((s.A, s.B), (f.id, params))
            self._index[key] = idx
        return self._index[key]


def _family_from_dict(d: dict) -> CatalogFamily:
    for name, dom in d.get("params", {}).items():
        if dom not in DOMAINS:
            raise ValueError(f"family {d['id']}: bad domain {dom!r} for {name}")
    return CatalogFamily(
        id=d["id"], n=int(d["n"]),
        A=tuple(tuple(str(x) for x in r) for r in d["A"]),
        B=tuple(str(x) for x in d["B"]),
        params=dict(d.get("params", {})),
        section=d.get("section", ""),
        moduli=tuple(d["moduli"]) if d.get("moduli") else None,
        exclude=tuple(d.get("exclude", ())),
        pre_gauge=d.get("pre_gauge"),
        note=d.get("note", ""),
        printed=d.get("printed"),
        erratum=d.get("erratum", ""),
    )


def load_catalog(path: str | os.PathLike | None = None) -> Catalog:
    path = path or os.environ.get(ENV_VAR)
    if path:
        data = json.loads(Path(path).read_text())
    else:
        data = json.loads(resources.files("simplexion").joinpath("data/catalog.json").read_text())
    return Catalog([_family_from_dict(d) for d in data["families"]], data.get("aliases", {}))


@lru_cache(maxsize=None)
def default_catalog() -> Catalog:
    return load_catalog()


def _domain_values(dom: str, D: int) -> list[int]:
    if dom == "free":
        return list(range(D))
    if dom == "unit":
        return list(unit_values(D))
    return [u for u in unit_values(D) if u != 1]


def domain_size(f: CatalogFamily, D: int) -> int:
    size = 1
    for dom in f.params.values():
        size *= len(_domain_values(dom, D))
    return size


def assignments(f: CatalogFamily, D: int, include_excluded: bool = True):
    names = f.param_names()
    pools = [_domain_values(f.params[p], D) for p in names]
    for vals in itertools.product(*pools):
        env = dict(zip(names, vals))
        if include_excluded or not is_excluded(f, env, D):
            yield env


def is_excluded(f: CatalogFamily, params: dict, D: int) -> bool:
    return any(expr.eval_cond(c, params, D) for c in f.exclude)


def _check_domain(f: CatalogFamily, params: dict, D: int):
    if not f.allows_modulus(D):
        raise DomainViolation(f"family {f.id} is only defined for D in {list(f.moduli)}")
    missing = set(f.params) - set(params)
    if missing:
        raise DomainViolation(f"family {f.id}: missing parameters {sorted(missing)}")
    for name, dom in f.params.items():
        if params[name] % D not in _domain_values(dom, D):
            raise DomainViolation(f"family {f.id}: {name}={params[name]} outside domain {dom!r} mod {D}")


def instantiate(f: CatalogFamily | str, params: dict | None = None, D: int = 2,
                catalog: Catalog | None = None) -> AffineSolution:
    if isinstance(f, str):
        f = (catalog or default_catalog()).get(f)
    params = dict(params or {})
    _check_domain(f, params, D)
    A = tuple(tuple(expr.eval_mod(e, params, D) for e in row) for row in f.A)
    B = tuple(expr.eval_mod(e, params, D) for e in f.B)
    tag = f.id + ("" if not params else "(" + ",".join(f"{k}={v}" for k, v in params.items()) + ")")
    return AffineSolution(MatZd(A, D), VecZd(B, D), tag)


def _pre_gauge_failure(f: CatalogFamily, params: dict, D: int, rng: random.Random) -> str | None:
    """Check the printed pre-gauge B: it must verify, and if a gauge v is printed,
    gauging with it must land on the family's gauge-fixed B."""
    pg = f.pre_gauge
    extra = {name: rng.choice(_domain_values(dom, D)) for name, dom in pg.get("params", {}).items()}
    env = dict(params, **extra)
    base = instantiate(f, params, D)
    B = VecZd(tuple(expr.eval_mod(e, env, D) for e in pg["B"]), D)
    pre = AffineSolution(base.A, B)
    if not verify_affine(pre):
        return f"pre-gauge B {B.tolist()} with {extra} does not verify"
    if "v" in pg:
        u = rng.choice(unit_values(D))
        try:
            v = expr.eval_mod(pg["v"], dict(env, u=u), D)
        except NotAUnit:
            return None
        if gauge_transform(pre, u, v).B != base.B:
            return f"gauge(u={u}, v={v}) of pre-gauge B does not give the printed B"
    return None


def validate_family(fid: str, D: int, mode: str = "exhaustive", k: int = 100,
                    seed: int = 0, tensor: int | bool = 8,
                    catalog: Catalog | None = None) -> ValidationReport:
    """Instantiate a family over its domain (or ``k`` samples) and verify each instance.

    ``tensor`` controls the tensor-level cross-check: an int verifies that many
    instances (the first ones in order), ``True`` verifies all of them.
    """
    cat = catalog or default_catalog()
    f = cat.get(fid)
    if not f.allows_modulus(D):
        raise DomainViolation(f"family {f.id} is only defined for D in {list(f.moduli)}")
    rng = random.Random(f"{seed}:{f.id}:{D}")
    size = domain_size(f, D)
    if mode == "exhaustive" or size <= k:
        if size > MAX_EXHAUSTIVE:
            raise BudgetExceeded(f"family {f.id}: {size} assignments at D={D}")
        envs = list(assignments(f, D))
    elif mode == "sample":
        names = f.param_names()
        pools = [_domain_values(f.params[p], D) for p in names]
        envs = [dict(zip(names, (rng.choice(p) for p in pools))) for _ in range(k)]
    else:
        raise ValueError(f"unknown validation mode {mode!r}")

    report = ValidationReport(f.id, D)
    insts = []
    for env in envs:
        if is_excluded(f, env, D):
            report.excluded += 1
            continue
        try:
            insts.append((env, instantiate(f, env, D)))
        except NotAUnit as exc:
            report.failures.append((env, f"not instantiable: {exc}"))
    report.instances_tested = len(insts)
    if insts:
        A = np.array([s.A.rows for _, s in insts], dtype=np.int64)
        B = np.array([s.B.entries for _, s in insts], dtype=np.int64)
        lhs, rhs = products_batch(A, B, f.n, D)
        ok = np.all((lhs == rhs).reshape(len(insts), -1), axis=1)
        for (env, s), good in zip(insts, ok):
            if not is_invertible(s.A):
                report.failures.append((env, "A is singular"))
            elif not good:
                report.failures.append((env, "matrix-level equation fails"))
    n_tensor = len(insts) if tensor is True else int(tensor)
    checked = [(env, s) for env, s in insts[:n_tensor] if is_invertible(s.A)]
    if checked:
        tables = np.stack([to_index_map(s).table for _, s in checked])
        good = tensor_ok_batch(build_system(f.n), tables, D)
        report.tensor_checked = len(checked)
        for (env, _), g in zip(checked, good):
            if not g:
                report.failures.append((env, "tensor-level equation fails"))
    if f.pre_gauge:
        for env, _ in insts:
            report.pre_gauge_checked += 1
            msg = _pre_gauge_failure(f, env, D, rng)
            if msg:
                report.failures.append((env, msg))
    return report


def match_family(s: AffineSolution, catalog: Catalog | None = None,
                 include_transpose: bool = False) -> list[tuple[str, dict]]:
    """Families (and assignments) instantiating some member of the orbit of ``s``."""
    cat = catalog or default_catalog()
    idx = cat.index(s.n, s.D)
    found = {}
    start = AffineSolution(s.A, s.B)
    members = orbit(s, include_transpose=include_transpose).sorted_members()
    for m in [start] + [m for m in members if m != start]:
        hit = idx.get((m.A, m.B))
        if hit and hit[0] not in found:
            found[hit[0]] = hit[1]
    return sorted(found.items())


# Two-simplex homogeneous patterns for prime D.

def two_simplex_patterns(A: MatZd) -> list[str]:
    (a, b), (c, d) = A.rows
    D = A.modulus
    out = []
    if b == 0 and c == 0:
        out.append("A1")
    if c == 0 and b == (1 - a * d) % D:
        out.append("A2")
    if b == 0 and c == (1 - a * d) % D:
        out.append("A2r")
    if (a, b, c, d) == (0, 1, 1, 0):
        out.append("A3")
    return out


def band_matrix(params: list[int], D: int) -> MatZd:
    """Band pattern continuing A_2^(2), A_3^(3t) and the n = 4 band family.

    Odd rows (1-based) carry a_k on the diagonal with 1 - a_k a_{k+1} to the
    right (first row) or on both sides (later odd rows); even rows are a_k.
    """
    n = len(params)
    a = list(params)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = a[i]
        if i % 2 == 0:
            if i > 0:
                M[i][i - 1] = 1 - a[i - 1] * a[i]
            if i + 1 < n:
                M[i][i + 1] = 1 - a[i] * a[i + 1]
    return MatZd(tuple(map(tuple, M)), D)


def is_generic_modulus(D: int) -> bool:
    return is_prime(D) and D > 2
