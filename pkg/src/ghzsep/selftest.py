"""Built-in invariant suites.

Each suite re-derives a closed-form result along an independent route
(dense linear algebra, grid search, or an algebraic identity) and
compares.  `run_selftest` is what the CLI and the service expose; the
quick level trims sample counts so it stays interactive.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import oracles, states, witness
from .decide import (
    Case,
    classify_case,
    critical_bound,
    critical_cubics,
    critical_point,
    decide,
    overlap_ratio,
    pq_state,
)

__all__ = ["SuiteResult", "SelftestReport", "run_selftest"]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0


@dataclass
class SelftestReport:
    passed: bool
    level: str
    seed: int
    suites: list[SuiteResult] = field(default_factory=list)


class _Checker:
    def __init__(self, tolerance_scale: float) -> None:
        self.scale = tolerance_scale
        self.checks = 0
        self.failures: list[str] = []

    def ok(self, message: str, condition: bool) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(message)

    def close(self, message: str, value: float, expected: float, tol: float) -> None:
        err = abs(value - expected)
        self.ok(
            f"{message}: |{value!r} - {expected!r}| = {err:.3e} > {tol * self.scale:.3e}",
            err <= tol * self.scale,
        )


_PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _pauli_word(word: str) -> np.ndarray:
    m = _PAULI[word[0]]
    for ch in word[1:]:
        m = np.kron(m, _PAULI[ch])
    return m


def _lambdas(c: tuple[float, float, float, float]) -> states.PauliCoefficients:
    return states.pauli_coefficients(states.GhzDiagonalState(a=(0.0, 0.0, 0.0, 0.0), c=c))


def _suite_state_roundtrips(c: _Checker, rng: np.random.Generator, n: int) -> None:
    for _ in range(n):
        x = oracles.random_x_state(rng, complex_c=True)
        back = states.x_part(states.to_dense(x))
        c.close("dense/compact a", float(np.max(np.abs(np.array(back.a) - np.array(x.a)))), 0.0, 1e-13)
        c.close("dense/compact b", float(np.max(np.abs(np.array(back.b) - np.array(x.b)))), 0.0, 1e-13)
        c.close("dense/compact c", float(np.max(np.abs(np.array(back.c) - np.array(x.c)))), 0.0, 1e-13)
    for _ in range(n):
        w = rng.random(8)
        w /= w.sum()
        g = states.from_ghz_weights(states.GhzWeights(tuple(w)))
        dense = states.to_dense(g)
        basis = states.ghz_basis()
        mix = sum(wk * np.outer(basis[k], basis[k].conj()) for k, wk in enumerate(w))
        c.close("weights vs basis mix", float(np.max(np.abs(dense - mix))), 0.0, 1e-13)
        pc = states.pauli_coefficients(g)
        g2 = states.from_pauli_coefficients(pc)
        c.close("pauli inversion a", float(np.max(np.abs(np.array(g2.a) - np.array(g.a)))), 0.0, 1e-13)
        c.close("pauli inversion c", float(np.max(np.abs(np.array(g2.c) - np.array(g.c)))), 0.0, 1e-13)
    x = oracles.random_x_state(rng, complex_c=True)
    g = states.symmetrize(x)
    c.close(
        "symmetrize idempotent",
        float(np.max(np.abs(states.to_dense(states.symmetrize(g)) - states.to_dense(g)))),
        0.0,
        1e-13,
    )


def _suite_pauli_traces(c: _Checker, rng: np.random.Generator, n: int) -> None:
    words = ("zzi", "ziz", "izz", "xxx", "yyx", "yxy", "xyy")
    for _ in range(n):
        g = oracles.random_ghz_state(rng)
        dense = states.to_dense(g)
        pc = states.pauli_coefficients(g)
        for word, val in zip(words, pc.as_tuple()):
            oracle = float(np.real(np.trace(dense @ _pauli_word(word))))
            c.close(f"tr(rho {word})", val, oracle, 1e-12)


def _suite_positivity(c: _Checker, rng: np.random.Generator, n: int) -> None:
    for _ in range(n):
        x = oracles.random_x_state(rng, positive=bool(rng.integers(2)), complex_c=True)
        closed = states.is_positive(x)
        lo = oracles.eigen_min(states.to_dense(x))
        # near-zero minimum eigenvalues are legitimately ambiguous at 1e-10
        c.ok(f"positivity closed={closed} eigen_min={lo}", closed == (lo >= -1e-10) or abs(lo) < 1e-9)


def _suite_ppt(c: _Checker, rng: np.random.Generator, n: int) -> None:
    for _ in range(n):
        x = oracles.random_x_state(rng, positive=True, complex_c=True)
        for party in "ABC":
            pt = states.partial_transpose(x, party)
            dense_pt = oracles.dense_partial_transpose(states.to_dense(x), "ABC".index(party))
            c.close(
                f"partial transpose {party}",
                float(np.max(np.abs(states.to_dense(pt) - dense_pt))),
                0.0,
                1e-13,
            )
        c.ok("ppt closed form vs dense eigenvalues", states.is_ppt(x) == oracles.eigen_ppt(x))


def _diag_objective(s: np.ndarray, t: np.ndarray, r: float) -> float:
    return math.sqrt((s[0] / r + t[3] * r) * (s[3] / r + t[0] * r)) + math.sqrt(
        (s[1] / r + t[2] * r) * (s[2] / r + t[1] * r)
    )


def _suite_diag_form(c: _Checker, rng: np.random.Generator, n: int) -> None:
    c.close("A(x,x)=sum for x=(1,2,3,4)", witness.min_diag_form((1, 2, 3, 4), (1, 2, 3, 4)), 10.0, 1e-10)
    c.close("A((.5,0,0,0),(2,0,0,0))", witness.min_diag_form((0.5, 0, 0, 0), (2, 0, 0, 0)), 1.0, 1e-10)
    c.close("A((1,0,0,1),(0,1,1,0))", witness.min_diag_form((1, 0, 0, 1), (0, 1, 1, 0)), 2.0, 1e-10)
    for _ in range(n):
        s = rng.random(4)
        t = rng.random(4)
        a = witness.min_diag_form(tuple(s), tuple(t))
        c.close("A symmetric in (s,t)", witness.min_diag_form(tuple(t), tuple(s)), a, 1e-9)
        lam = float(rng.random() + 0.25)
        c.close("A degree-1 homogeneous", witness.min_diag_form(tuple(lam * s), tuple(lam * t)), lam * a, 1e-9)
        grid = min(_diag_objective(s, t, math.exp(th)) for th in np.linspace(-30, 30, 4001))
        c.ok(f"A below its definitional grid: {a} vs {grid}", a <= grid + 1e-9)
        c.close("A vs definitional grid", a, grid, 1e-4)


def _antidiag_objective(u: tuple[complex, ...], th: float) -> float:
    e = complex(math.cos(th), math.sin(th))
    return abs(u[0] * e + np.conjugate(u[3])) + abs(u[1] * e + np.conjugate(u[2]))


def _suite_antidiag_form(c: _Checker, rng: np.random.Generator, n: int) -> None:
    c.close("B(i,1,1,i)", witness.max_antidiag_form((1j, 1, 1, 1j)), 2.0 * math.sqrt(2.0), 1e-10)
    for k in range(n):
        if k % 3 == 0:
            u = tuple(complex(v) for v in rng.standard_normal(4))
        else:
            u = tuple(rng.standard_normal(4) + 1j * rng.standard_normal(4))
        b = witness.max_antidiag_form(u)
        grid = max(_antidiag_objective(u, th) for th in np.linspace(-math.pi, math.pi, 2001))
        c.ok(f"B above its definitional grid: {b} vs {grid}", b >= grid - 1e-9)
        c.close("B vs definitional grid", b, grid, 1e-5)
        lam = float(rng.random() + 0.25)
        c.close(
            "B degree-1 homogeneous",
            witness.max_antidiag_form(tuple(lam * v for v in u)),
            lam * b,
            1e-9,
        )


def _suite_angle_form(c: _Checker, rng: np.random.Generator, n: int) -> None:
    c.close("C(1,1,1,1)", witness.max_angle_form((1, 1, 1, 1)), 4.0, 1e-10)
    c.close("C(-1,3,3,3)", witness.max_angle_form((-1, 3, 3, 3)), 8.0, 1e-10)
    c.close("C(-1,2,2,2)", witness.max_angle_form((-1, 2, 2, 2)), 3.0 * math.sqrt(3.0), 1e-10)
    for _ in range(n):
        z = rng.standard_normal(4) * float(rng.random() * 3 + 0.1)
        cv = witness.max_angle_form(tuple(z))
        bv = witness.max_antidiag_form(tuple(complex(v) for v in z))
        c.close("C equals angle-reduced B", cv, bv, 1e-9)
        c.ok(
            "region invariant under global sign flip",
            witness.classify_region(tuple(z)) is witness.classify_region(tuple(-z)),
        )
    for _ in range(max(2, n // 2)):
        z = rng.standard_normal(4)
        cv = witness.max_angle_form(tuple(z))
        oracle = oracles.angle_form_grid_max(tuple(z), grid=48, polish=2)
        c.close("C vs phase-grid oracle", cv, oracle, 1e-6)


def _suite_cubic_identities(c: _Checker, rng: np.random.Generator, n: int) -> None:
    made = 0
    while made < n:
        cs = tuple(float(v) for v in rng.standard_normal(4))
        lam = _lambdas(cs)
        l5, l6, l7, l8 = lam.xxx, lam.yyx, lam.yxy, lam.xyy
        t = critical_cubics(cs)
        scale = max(abs(v) for v in t) ** 2 + 1e-30
        c.close(
            "(t2+t3)^2 - (t1+t4)^2 identity",
            ((t[1] + t[2]) ** 2 - (t[0] + t[3]) ** 2) / scale,
            l5 * l8 * (l6 * l7) ** 2 / 64.0 / scale,
            1e-9,
        )
        c.close(
            "(t1-t4)^2 - (t2-t3)^2 identity",
            ((t[0] - t[3]) ** 2 - (t[1] - t[2]) ** 2) / scale,
            l6 * l7 * (l5 * l8) ** 2 / 64.0 / scale,
            1e-9,
        )
        if classify_case(cs) is not Case.III:
            continue
        made += 1
        bound = critical_bound(lam)
        prod = l5 * l6 * l7 * l8
        for i in range(4):
            rhs = cs[i] ** 2 + 16.0 * t[i] ** 2 / prod
            c.close(f"bound^2 vs c_{i + 1} identity", bound * bound / rhs, 1.0, 1e-9)
        s = critical_point(cs)
        c.close("ratio at critical point equals bound", overlap_ratio(cs, s) / bound, 1.0, 1e-8)
        c.ok("critical point has unit 1-norm", abs(sum(abs(v) for v in s) - 1.0) < 1e-12)


def _suite_family_thresholds(c: _Checker, rng: np.random.Generator, n: int) -> None:
    del rng, n
    for alpha, want_ppt, want_sep in (
        (1.9, False, False),
        (2.0, True, False),
        (2.7, True, False),
        (2.0 * math.sqrt(2.0), True, True),
        (3.0, True, True),
    ):
        x = states.GhzDiagonalState(a=(4.0 + alpha, alpha, alpha, alpha), c=(2.0, 2.0, -2.0, 2.0))
        v = decide(x, include_witness=False)
        c.ok(f"anisotropy family alpha={alpha}: ppt={v.ppt} want {want_ppt}", v.ppt == want_ppt)
        c.ok(f"anisotropy family alpha={alpha}: sep={v.separable} want {want_sep}", v.separable == want_sep)
        c.ok(f"anisotropy family alpha={alpha}: case {v.case}", v.case is Case.III)
        c.close(f"anisotropy family alpha={alpha}: f_max", v.f_max, 2.0 * math.sqrt(2.0), 1e-9)
    for w, want_sep in ((0.12, True), (0.2, True), (0.2000001, False), (0.6, False)):
        a = ((1.0 - w) / 8.0 + w / 2.0, (1.0 - w) / 8.0, (1.0 - w) / 8.0, (1.0 - w) / 8.0)
        cvec = (w / 2.0, 0.0, 0.0, 0.0)
        v = decide(states.GhzDiagonalState(a=a, c=cvec), include_witness=False)
        c.ok(f"noisy GHZ w={w}: case {v.case}", v.case is Case.I)
        c.ok(f"noisy GHZ w={w}: sep={v.separable} want {want_sep}", v.separable == want_sep)
    for p, q, want_case in (
        (0.3, 0.9, Case.I),
        (-0.5, 1.0, Case.II),
        (0.9, -0.8, Case.III),
    ):
        v = decide(pq_state(p, q), include_witness=False)
        c.ok(f"pq({p},{q}) case {v.case} want {want_case}", v.case is want_case)


def _suite_witnesses(c: _Checker, rng: np.random.Generator, n: int) -> None:
    found = 0
    tries = 0
    while found < n and tries < 60 * n:
        tries += 1
        g = oracles.random_ghz_state(rng)
        v = decide(g)
        if v.separable or not v.positive or v.witness is None:
            continue
        found += 1
        w = v.witness.witness
        c.ok("certificate passes the witness predicate", witness.is_witness(w))
        c.close(
            "pairing matches dense trace",
            v.witness.pairing,
            float(np.real(np.trace(states.to_dense(g) @ states.to_dense(w).T))),
            1e-10,
        )
        c.ok(f"pairing negative: {v.witness.pairing}", v.witness.pairing < 0)
        c.close("pairing equals 2(min a - f_max)", v.witness.pairing, 2.0 * (min(g.a) - v.f_max), 1e-9)
        probe = oracles.product_probe(w, samples=4000, seed=int(rng.integers(2**31)))
        c.ok(f"product probe min {probe}", probe >= -1e-10)
    c.ok(f"found {found} entangled samples", found >= max(1, n // 2))


def _suite_decomposition(c: _Checker, rng: np.random.Generator, n: int) -> None:
    mixed = states.XState(a=(0.125,) * 4, b=(0.125,) * 4, c=(0.0,) * 4)
    d = oracles.decompose(mixed, tol=1e-10)
    c.ok(f"maximally mixed decomposes (residual {d.residual:.2e})", d.success)
    c.ok(f"maximally mixed uses {len(d.atoms)} atoms", len(d.atoms) <= 8)
    for k in range(n):
        p = float(rng.uniform(0.05, 0.45))
        x = pq_state(p, -p / 2.0)
        v = decide(x, include_witness=False)
        if not v.separable:
            continue
        d = oracles.decompose(x, tol=1e-7, seed=k)
        c.ok(f"pq({p:.3f}) decomposes (residual {d.residual:.2e})", d.success)
        if d.success:
            c.close(
                "synthesized matrix matches",
                float(np.max(np.abs(d.synthesize() - states.to_dense(x)))),
                0.0,
                1e-6,
            )


_SUITES = [
    ("state-roundtrips", _suite_state_roundtrips, 20, 60),
    ("pauli-traces", _suite_pauli_traces, 5, 25),
    ("positivity", _suite_positivity, 60, 400),
    ("ppt", _suite_ppt, 40, 300),
    ("diag-form", _suite_diag_form, 6, 40),
    ("antidiag-form", _suite_antidiag_form, 8, 40),
    ("angle-form", _suite_angle_form, 6, 30),
    ("cubic-identities", _suite_cubic_identities, 30, 200),
    ("family-thresholds", _suite_family_thresholds, 1, 1),
    ("witness-certificates", _suite_witnesses, 3, 12),
    ("product-decomposition", _suite_decomposition, 1, 3),
]


def run_selftest(seed: int = 0, level: str = "full", tolerance_scale: float = 1.0) -> SelftestReport:
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    if tolerance_scale < 0:
        raise ValueError("tolerance_scale must be nonnegative")
    report = SelftestReport(passed=True, level=level, seed=seed)
    for index, (name, fn, quick_n, full_n) in enumerate(_SUITES):
        rng = np.random.default_rng([seed, index])
        checker = _Checker(tolerance_scale)
        start = time.perf_counter()
        fn(checker, rng, quick_n if level == "quick" else full_n)
        result = SuiteResult(
            name=name,
            passed=not checker.failures,
            checks=checker.checks,
            failures=checker.failures[:20],
            seconds=time.perf_counter() - start,
        )
        report.suites.append(result)
        report.passed = report.passed and result.passed
    return report
