"""Named verification tasks and their reports."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

TASKS = (
    "manin-confluence", "qdet-central", "coaction", "plucker-kernel", "big-cell",
    "flatness", "bialgebra", "poisson-table", "vee-limit", "p-perp", "coideal",
    "main-theorem",
)


@dataclass(frozen=True)
class VerifyTask:
    name: str
    n: int = 2
    r: int = 1
    N: int = 2
    D: int = 2
    mode: str = "GL"
    q_conv: str = "standard"
    seed: int = 0

    def __post_init__(self):
        if self.name not in TASKS and self.name != "all":
            raise ValueError(f"unknown task {self.name!r}; choose from {', '.join(TASKS)} or all")
        if self.mode not in ("GL", "SL"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.q_conv not in ("standard", "inverted"):
            raise ValueError(f"unknown q convention {self.q_conv!r}")


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = ""


@dataclass
class Report:
    task: dict
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    subreports: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and all(s.passed for s in self.subreports)

    def add(self, name: str, passed: bool, detail=""):
        self.checks.append(Check(name, bool(passed), detail))

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "task": self.task,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
            "notes": list(self.notes),
        }
        if self.subreports:
            out["subreports"] = [s.to_dict(timing) for s in sorted(self.subreports, key=lambda s: s.task["name"])]
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True, default=str)

    def to_text(self) -> str:
        head = f"{self.task['name']}: {'PASS' if self.passed else 'FAIL'}"
        lines = [head]
        for c in self.checks:
            shown = c.detail not in ("", None) and c.detail != [] and c.detail != {}
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if shown else ""))
        for note in self.notes:
            lines.append(f"  note: {note}")
        for s in sorted(self.subreports, key=lambda s: s.task["name"]):
            lines.extend("  " + line for line in s.to_text().splitlines())
        return "\n".join(lines)


def _strs(items):
    return [str(x) for x in items]


# -- task bodies ------------------------------------------------------------

def _manin_confluence(t: VerifyTask, rep: Report):
    from .ncalg import build_manin_presentation, check_confluence, pbw_count_matches

    for m in range(1, t.n + 1):
        for k in range(1, t.n + 1):
            pres = build_manin_presentation(m, k, t.q_conv)
            cr = check_confluence(pres)
            rep.add(f"confluence M_{m}x{k}", cr.ok, f"{cr.overlaps_checked} overlaps, {len(cr.failures)} failures")
            counts = all(pbw_count_matches(pres, d) for d in range(4))
            rep.add(f"PBW counts M_{m}x{k} (degree <= 3)", counts)


def _qdet_central(t: VerifyTask, rep: Report):
    from .hopf import GLElement, gl_reduce, is_group_like, quantum_determinant, sl_reduce

    dq = quantum_determinant(t.n, t.q_conv)
    pres = dq.pres
    central = [pres.labels[g] for g in range(pres.ngens)
               if dq * pres.gen(pres.keys[g]) != pres.gen(pres.keys[g]) * dq]
    rep.add("D_q central", not central, ", ".join(central))
    rep.add("D_q group-like", is_group_like(dq))
    inv = GLElement.T(pres) * GLElement.from_poly(dq)
    rep.add("T * D_q = 1 in O_q(GL_n)", gl_reduce(inv) == GLElement.from_poly(pres.one()))
    rep.add("D_q = 1 in O_q(SL_n)", sl_reduce(dq) == pres.one())
    rep.notes.append(f"D_q = {dq}")


def _coaction(t: VerifyTask, rep: Report):
    from .minors import coaction_identity_check, plucker_indices

    bad = [I for I in plucker_indices(t.n, t.r) if not coaction_identity_check(I, t.n, t.q_conv)]
    rep.add(f"Delta(D^I) = sum_K D^I_K (x) D^K for all I at (n, r) = ({t.n}, {t.r})", not bad, _strs(bad))


def _plucker_kernel(t: VerifyTask, rep: Report):
    from .minors import GrassmannBasisSlice

    s = GrassmannBasisSlice(t.n, t.r, t.D, t.q_conv)
    rep.add("flat (rank over Q(q) = rank at q = 1)", s.is_flat(), f"{s.rank} / {s.rank_at_one}")
    rep.notes.append(f"kernel dimension at (n, r, d) = ({t.n}, {t.r}, {t.D}): {s.kernel_dimension}")
    rep.task["kernel_dimension"] = s.kernel_dimension


def _big_cell(t: VerifyTask, rep: Report):
    from .bigcell import degree_zero_identification_check, verify_tij_manin

    mr = verify_tij_manin(t.n, t.r, t.q_conv)
    failed = [(rel.left, rel.right) for rel in mr.relations if not rel.passed]
    rep.add(f"t_ij Manin relations ({len(mr.relations)} pairs, reversed columns)", mr.ok, _strs(failed))
    if mr.literal_failures:
        rep.notes.append(f"literal column order fails on {len(mr.literal_failures)} pairs; "
                         "the relations hold with column j holding t_(i, r+1-j)")
    rep.add(f"degree-zero identification (d <= {t.D})", degree_zero_identification_check(t.n, t.r, t.D, t.q_conv))


def _flatness(t: VerifyTask, rep: Report):
    from .bigcell import intersection_check
    from .minors import GrassmannBasisSlice

    for d in range(1, t.D + 1):
        s = GrassmannBasisSlice(t.n, t.r, d, t.q_conv)
        rep.add(f"Plucker slice flat at degree {d}", s.is_flat(), f"{s.rank} / {s.rank_at_one}")
    rep.add(f"big-cell intersection property (d <= {t.D})", intersection_check(t.n, t.r, t.D, t.q_conv))


def _bialgebra(t: VerifyTask, rep: Report):
    from . import bialgebra as B

    n = t.n
    rep.add("Jacobi gl_n", not B.jacobi_violations(B.GL, n))
    rep.add("Jacobi gl_n^* (printed table)", not B.jacobi_violations(B.GLSTAR, n))
    rep.add("co-Jacobi gl_n", not B.co_jacobi_violations(B.GL, n))
    rep.add("co-Jacobi gl_n^*", not B.co_jacobi_violations(B.GLSTAR, n))
    rep.add("1-cocycle gl_n", not B.cocycle_violations(n))
    dual = B.pairing_duality_check(n)
    rep.add("pairing duality (printed table)", dual.ok, f"{len(dual.violations)} of {2 * dual.checked}")
    alt = B.pairing_duality_check(n, lambda a, b: B.dual_glstar_bracket(a, b, n))
    rep.add("pairing duality (duality-induced bracket)", alt.ok, f"{len(alt.violations)} violations")
    rep.add("double realization is a homomorphism", not B.double_homomorphism_violations(n))
    ln = B.l_n(n)
    central = all(not B.glstar_bracket(ln, B.Es(*k)) for k in B.basis_keys(n))
    rep.add("[l_n, -] = 0", central)
    if not dual.ok:
        rep.notes.append("the printed gl_n^* table differs from the duality-induced bracket on composable "
                         "root pairs (factor 2 and sign); see dual_glstar_bracket")


def _poisson_table(t: VerifyTask, rep: Report):
    from .drinfeld import poisson_property_check, poisson_table

    pt = poisson_table(t.n, t.q_conv)
    bad = [f"{e.left},{e.right}: {e.computed} vs {e.printed}" for e in pt.entries if not (e.agrees or e.discrepancy)]
    rep.add("table entries (flagged entry excepted)", pt.ok, bad)
    flagged = [f"{{x{e.left}, x{e.right}}} = {e.computed} (table: {e.printed})" for e in pt.entries if e.discrepancy]
    rep.notes.append(f"discrepancy flag: {pt.discrepancy_flag}")
    rep.notes.extend(flagged)
    pp = poisson_property_check(2, 50, t.seed, t.q_conv)
    rep.add(f"antisymmetry/Leibniz/Jacobi on 50 random pairs at n = 2 (seed {t.seed})", pp.ok)


def _vee_limit(t: VerifyTask, rep: Report):
    from .drinfeld import d_minus_expected, d_minus_image_via_u, d_minus_identity_check, vee_limit_table

    vr = vee_limit_table(t.n, t.q_conv)
    rep.add("chi-route and x-route limits agree", not vr.route_disagreements, len(vr.route_disagreements))
    rep.add(f"limit equals the printed gl_n^* table ({vr.pairs} pairs)", not vr.mismatches,
            [f"[chi{a}, chi{b}] -> {got} (table {exp})" for a, b, got, exp in vr.mismatches])
    rep.add("D- -> -(E*_11 + ... + E*_nn)", d_minus_image_via_u(t.n, t.q_conv) == d_minus_expected(t.n))
    rep.add("D_q * D- = -(q-1)^-1 (D_q - 1)", d_minus_identity_check(t.n, t.q_conv))


def _p_perp(t: VerifyTask, rep: Report):
    from .drinfeld import verify_p_perp_image

    pr = verify_p_perp_image(t.n, t.r, t.q_conv)
    rep.add("images span p^perp", pr.spans_p_perp, {str(k): v for k, v in pr.images.items()})
    rep.add("p^perp abelian", pr.p_perp_abelian)
    rep.add("degree-2 products span Sym^2(p^perp)", pr.degree2_dimension == pr.degree2_expected,
            f"{pr.degree2_dimension} / {pr.degree2_expected}")
    rep.add("mu_ij -> (-1)^(r-j) E*_ij", pr.sign_ok, {str(k): v for k, v in pr.signs.items()})
    if not pr.sign_ok:
        rep.notes.append("observed mu_ij -> +E*_ij: the permutation sign of the minor cancels (-q)^(r-j) at q = 1")


def _coideal(t: VerifyTask, rep: Report):
    from .completion import coideal_membership, delta_tilde_d0_inverse
    from .minors import staircase

    cert = delta_tilde_d0_inverse(t.n, t.r, t.N + 1, t.q_conv)
    rep.add("valuation of sum_{K != I_0} term >= 2", cert.s_valuation >= 2, cert.s_valuation)
    for i, j in staircase(t.n, t.r):
        c = coideal_membership(i, j, t.n, t.r, t.N, t.D, t.q_conv)
        rep.add(c.summary(), c.passed, {str(k): r for k, r in enumerate(c.residuals) if r})


def _main_theorem(t: VerifyTask, rep: Report):
    from .completion import verify_main_theorem

    mt = verify_main_theorem(t.n, t.r, t.N, t.D, t.q_conv)
    rep.add("mu images span p^perp", mt.p_perp_ok)
    for c in mt.coideal:
        rep.add(c.summary(), c.passed)
    rep.add("(q-1)-intersection property", mt.intersection_ok, f"{mt.rank_at_one} / {mt.monomial_count}")


_DISPATCH = {
    "manin-confluence": _manin_confluence,
    "qdet-central": _qdet_central,
    "coaction": _coaction,
    "plucker-kernel": _plucker_kernel,
    "big-cell": _big_cell,
    "flatness": _flatness,
    "bialgebra": _bialgebra,
    "poisson-table": _poisson_table,
    "vee-limit": _vee_limit,
    "p-perp": _p_perp,
    "coideal": _coideal,
    "main-theorem": _main_theorem,
}


def run_task(t: VerifyTask) -> Report:
    if t.name == "all":
        return run_all(t)
    start = time.perf_counter()
    rep = Report(asdict(t))
    _DISPATCH[t.name](t, rep)
    rep.wall_time = time.perf_counter() - start
    return rep


def run_all(t: VerifyTask) -> Report:
    """Every task at the smallest nontrivial size (n = max(t.n, 2), r = 1)."""
    start = time.perf_counter()
    rep = Report(asdict(t))
    n = max(t.n, 2)
    for name in TASKS:
        sub = VerifyTask(name, n=n, r=1, N=t.N, D=t.D, mode=t.mode, q_conv=t.q_conv, seed=t.seed)
        rep.subreports.append(run_task(sub))
    rep.wall_time = time.perf_counter() - start
    return rep
