"""End-to-end construction and bound assembly: plan, blocks, chain, surface, certificate, bounds."""
from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import rayleigh
from .certify import SystoleCertificate, certify_systole, cheeger_lower, required_girth
from .errors import BoundUndefinedError, CertificationRefused, ChainsurfError, NumericalError
from .graphs import CubicGraph, block_graph, build_chain, chain_plan, min_block_size, ChainPlan
from .surface import assemble, block_chain

log = logging.getLogger(__name__)

# slack for comparing two computed bounds that may coincide up to rounding
ORDER_RTOL = 1e-9

CSV_COLUMNS = (
    "g", "k", "eps", "V0", "g0", "g1",
    "lambda_path_k", "lambda_pants_k", "exact_family_bound", "closed_form_bound",
    "beta_bound", "cheeger_lower", "g2_lambda_path_k", "status",
)


@dataclass(frozen=True)
class ChainConstruction:
    plan: ChainPlan
    graph: CubicGraph
    seed: int

    @property
    def meta(self) -> dict:
        p = self.plan
        return {
            "seed": self.seed,
            "genus": p.genus,
            "V0": p.block_size,
            "g0": p.block_count_full,
            "V1": p.last_block_size,
            "required_girth": p.required_girth,
        }


def construct_chain(genus: int, epsilon: float, seed: int = 0, V0: int | None = None) -> ChainConstruction:
    """Build the chained graph G_g whose girth certifies systole epsilon.

    Block i is generated with seed ``seed + i``.
    """
    w = required_girth(epsilon)
    v0 = min_block_size(w, seed) if V0 is None else int(V0)
    plan = chain_plan(genus, v0, w)
    blocks = []
    for i in range(plan.block_count_full + 1):
        size = plan.last_block_size if i == plan.block_count_full else plan.block_size
        blocks.append(block_graph(size, w, seed + i))
    return ChainConstruction(plan, build_chain(plan, blocks), seed)


@dataclass
class BoundReport:
    """All bounds for one (genus, k, epsilon).

    ``exact_family_bound`` is the largest Rayleigh quotient among the disjointly
    supported test functions; it bounds lambda_k because every combination of
    them has a quotient no larger. The model eigenvalues are upper bounds for the
    surface's lambda_0..lambda_k; ``cheeger_lower`` bounds lambda_1 and hence
    every lambda_k, k >= 1, from below.
    """

    genus: int
    k: int
    epsilon: float
    V0: int
    g0: int
    g1: int
    exact_family_bound: float | None
    closed_form_bound: float | None
    beta_bound: float
    path_model_eigs: list
    pants_model_eigs: list | None
    cheeger_lower: float
    family_energy: list = field(default_factory=list)
    family_mass: list = field(default_factory=list)
    energy_upper_bound: float | None = None
    mass_lower_bound: float | None = None
    certificate: dict = field(default_factory=dict)

    @property
    def lambda_path_k(self) -> float:
        return self.path_model_eigs[self.k]

    @property
    def lambda_pants_k(self) -> float | None:
        return None if self.pants_model_eigs is None else self.pants_model_eigs[self.k]

    @property
    def pile_ratio_holds(self) -> bool | None:
        """Whether g1/g >= 1/(24 V0 k); None for k = 0. Checked and reported, never assumed."""
        if self.k == 0:
            return None
        return self.g1 * 24 * self.V0 * self.k >= self.genus

    @property
    def status(self) -> str:
        return "ok" if self.pile_ratio_holds is not False else "ok; g1/g < 1/(24 V0 k)"

    def csv_row(self) -> dict:
        return {
            "g": self.genus,
            "k": self.k,
            "eps": self.epsilon,
            "V0": self.V0,
            "g0": self.g0,
            "g1": self.g1,
            "lambda_path_k": self.lambda_path_k,
            "lambda_pants_k": self.lambda_pants_k,
            "exact_family_bound": self.exact_family_bound,
            "closed_form_bound": self.closed_form_bound,
            "beta_bound": self.beta_bound,
            "cheeger_lower": self.cheeger_lower,
            "g2_lambda_path_k": self.genus**2 * self.lambda_path_k,
            "status": self.status,
        }

    def to_dict(self) -> dict:
        out = asdict(self)
        out["pile_ratio_holds"] = self.pile_ratio_holds
        out["status"] = self.status
        return out


def _check_order(lower, upper, what):
    if lower is not None and upper is not None and lower > upper * (1.0 + ORDER_RTOL):
        raise NumericalError(f"bound ordering violated: {what} ({lower!r} > {upper!r})")


def bound_report(genus, k, epsilon, V0=None, seed=0, pants_model=True) -> BoundReport:
    construction = construct_chain(genus, epsilon, seed, V0)
    plan = construction.plan
    surface = assemble(construction.graph, epsilon)
    cert = certify_systole(surface)
    if not cert.certified:
        raise CertificationRefused(
            f"surface not certified: girth {cert.graph_girth} * d = {cert.condition_lhs:.6g} "
            f"< 2 eps = {cert.condition_rhs:.6g}; need girth >= {cert.required_girth}"
        )
    chain = block_chain(surface)
    family = rayleigh.build_test_functions(chain, k)
    energy = rayleigh.family_energy(family, epsilon)
    mass = rayleigh.family_mass(family, chain)
    try:
        exact = rayleigh.exact_family_bound(family, chain, epsilon)
    except ChainsurfError:
        exact = None
    try:
        closed = rayleigh.closed_form_bound(genus, k, epsilon, plan.block_size)
    except BoundUndefinedError:
        closed = None
    path_eigs = rayleigh.generalized_eigs(rayleigh.build_path_model(chain, epsilon), k + 1)
    pants_eigs = None
    if pants_model:
        pants_eigs = rayleigh.generalized_eigs(rayleigh.build_pants_model(surface), k + 1)
    lower = cheeger_lower(genus, epsilon).lambda1_lower

    _check_order(path_eigs[k], exact, "path-model lambda_k <= exact family bound")
    _check_order(exact, closed, "exact family bound <= closed-form bound")
    if k >= 1:
        _check_order(lower, path_eigs[k], "Cheeger lower bound <= path-model lambda_k")

    g1 = family.g1
    report = BoundReport(
        genus=int(genus),
        k=int(k),
        epsilon=float(epsilon),
        V0=plan.block_size,
        g0=plan.block_count_full,
        g1=g1,
        exact_family_bound=exact,
        closed_form_bound=closed,
        beta_bound=rayleigh.beta(epsilon, plan.block_size) * k**2 / genus**2,
        path_model_eigs=[float(x) for x in path_eigs],
        pants_model_eigs=None if pants_eigs is None else [float(x) for x in pants_eigs],
        cheeger_lower=lower,
        family_energy=energy.tolist(),
        family_mass=mass.tolist(),
        energy_upper_bound=rayleigh.energy_upper_bound(epsilon, g1),
        mass_lower_bound=rayleigh.mass_lower_bound(epsilon, plan.block_size, g1) if g1 >= 3 else None,
        certificate=certificate_fields(cert),
    )
    if report.pile_ratio_holds is False:
        log.warning("g=%d k=%d: g1/g = %d/%d is below 1/(24 V0 k) with V0 = %d", genus, k, g1, genus, plan.block_size)
    return report


def certificate_fields(cert: SystoleCertificate) -> dict:
    out = asdict(cert)
    out["verdict"] = cert.verdict.value
    return out


def _sweep_one(args):
    genus, k, epsilon, seed, V0, pants_model = args
    try:
        return bound_report(genus, k, epsilon, V0, seed, pants_model).csv_row()
    except ChainsurfError as exc:
        log.warning("sweep row g=%s failed: %s", genus, exc)
        row = dict.fromkeys(CSV_COLUMNS, None)
        row.update(g=genus, k=k, eps=epsilon, status=f"error: {type(exc).__name__}: {exc}")
        return row


def sweep(epsilon, k, genera, seed=0, V0=None, pants_model=True, workers=1) -> list[dict]:
    """One row per genus (duplicates kept), sorted by genus; failed rows carry an error status."""
    jobs = [(int(g), k, epsilon, seed, V0, pants_model) for g in genera]
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_one, jobs))
    else:
        rows = [_sweep_one(j) for j in jobs]
    order = sorted(range(len(rows)), key=lambda i: (rows[i]["g"], i))
    return [rows[i] for i in order]


def _csv_value(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x) if math.isfinite(x) else str(x)
    if isinstance(x, np.floating):
        return repr(float(x))
    return str(x)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_csv_value(row.get(c)) for c in CSV_COLUMNS])
    return buf.getvalue()
