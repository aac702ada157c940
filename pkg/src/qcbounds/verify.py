"""Verification sweeps backing `qcbounds verify` and the acceptance tests.

Each suite exercises one family of module invariants over its full
parameter grid and returns a SuiteResult listing any violations; a
correct build produces none.  Randomized suites take an explicit seed
so reruns are bit-reproducible.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bounds, compgroup, isogeny, runge, trace
from .arith import (
    fundamental_discriminants,
    gauss_sum,
    is_prime,
    kloosterman_direct,
    kloosterman_fast,
    make_character,
    next_prime,
)
from .bessel import bessel_j1
from .bounds import twisted_dft_all
from .runge import UpperHalfPoint

DEFAULT_SEED = 12345


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)


def _finish(result: SuiteResult, t0: float) -> SuiteResult:
    result.elapsed_s = time.time() - t0
    return result


def _kloosterman_table(c: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Real and imaginary accumulations of S(m,n;c) for 1 <= m,n <= k."""
    if c == 1:
        return np.ones((k, k)), np.zeros((k, k))
    units = np.array([v for v in range(1, c) if math.gcd(v, c) == 1], dtype=np.int64)
    invs = np.array([pow(int(v), -1, c) for v in units], dtype=np.int64)
    ms = np.arange(1, k + 1, dtype=np.int64)
    a = np.mod(np.outer(ms, units), c)
    b = np.mod(np.outer(ms, invs), c)
    phases = (a[:, None, :] + b[None, :, :]) % c * (2.0 * math.pi / c)
    return np.cos(phases).sum(axis=2), np.sin(phases).sum(axis=2)


def _weil_one_modulus(c: int, max_mn: int, tol: float) -> list[str]:
    fails: list[str] = []
    real, imag = _kloosterman_table(c, max_mn)
    if np.max(np.abs(imag)) > 1e-9:
        fails.append(f"c={c}: imaginary part {np.max(np.abs(imag)):.2e}")
    if np.max(np.abs(real - real.T)) > 1e-9:
        fails.append(f"c={c}: symmetry violated")
    hints = [p for p in (3, 5, 7, 11, 13) if c % p == 0]
    hints = [p for p in hints if _valuation(c, p) <= 3]
    for m in range(1, max_mn + 1):
        for n in range(1, max_mn + 1):
            v = abs(real[m - 1, n - 1])
            if v > bounds.weil_bound(m, n, c).bound_value + tol:
                fails.append(f"generic Weil fails at ({m},{n},{c})")
            for p in hints:
                if v > bounds.weil_bound(m, n, c, p).bound_value + tol:
                    fails.append(f"refined Weil fails at ({m},{n},{c}) hint {p}")
            if c <= max_mn:
                per = kloosterman_direct(m % c, n % c, c)
                if abs(real[m - 1, n - 1] - per) > 1e-9:
                    fails.append(f"periodicity fails at ({m},{n},{c})")
    return fails


def _valuation(c: int, p: int) -> int:
    a = 0
    while c % p == 0:
        c //= p
        a += 1
    return a


def weil_suite(max_c: int = 400, max_mn: int = 12, threads: int = 1) -> SuiteResult:
    """Realness, symmetry, periodicity, all four Weil refinement cases,
    the fast/direct oracle equivalence, and Gauss-sum moduli."""
    t0 = time.time()
    res = SuiteResult("weil")
    cs = range(1, max_c + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            all_fails = pool.map(lambda c: _weil_one_modulus(c, max_mn, 1e-6), cs)
    else:
        all_fails = (_weil_one_modulus(c, max_mn, 1e-6) for c in cs)
    for fails in all_fails:
        res.checks += max_mn * max_mn + 2
        res.failures.extend(fails)
    for c in range(1, max_c + 1):
        for m in range(1, max_mn + 1):
            for n in range(1, max_mn + 1):
                if abs(kloosterman_fast(m, n, c) - kloosterman_direct(m, n, c)) > 1e-9:
                    res.failures.append(f"fast != direct at ({m},{n},{c})")
        res.checks += max_mn * max_mn
    for D in fundamental_discriminants(3, 500):
        g = abs(gauss_sum(make_character(D))) ** 2
        res.check(abs(g - D) <= 1e-8 * D, f"|G(chi_{D})|^2 != {D}")
    return _finish(res, t0)


def trig_suite(max_f: int = 300) -> SuiteResult:
    """S_{K,F} <= (4F/pi^2)(log F + 1.5) for 0 <= K <= F <= max_f."""
    t0 = time.time()
    res = SuiteResult("trig")
    for F in range(1, max_f + 1):
        bound = bounds.trig_sum_bound(F)
        if F == 1:
            res.check(0.0 <= bound + 1e-9, "F=1")
            continue
        g = np.arange(1, F, dtype=np.float64)
        inv_sin = 1.0 / np.sin(math.pi * g / F)
        K = np.arange(0, F + 1, dtype=np.float64)
        sums = np.abs(np.sin(math.pi * np.outer(K, g) / F)) @ inv_sin
        res.checks += F + 1
        worst = float(np.max(sums)) - bound
        if worst > 1e-9:
            res.failures.append(f"trig bound fails at F={F} by {worst:.2e}")
    return _finish(res, t0)


def twisted_suite(
    discs: tuple[int, ...] = (3, 4, 7, 8, 11, 15), max_c: int = 60, max_m: int = 5
) -> SuiteResult:
    """DFT modulus and zero structure, and partial-sum suprema, for the
    character-twisted Kloosterman sums."""
    t0 = time.time()
    res = SuiteResult("twisted")
    for D in discs:
        chi = make_character(D)
        for c in range(1, max_c + 1):
            F = math.lcm(c, D)
            quot = F // math.gcd(c, D)
            zero_mask = np.array([math.gcd(a, quot) != 1 for a in range(F)])
            cb = c * math.sqrt(D)
            for m in range(1, max_m + 1):
                vals = np.abs(twisted_dft_all(m, c, chi))
                res.checks += 2 * F + 1
                if np.max(vals) > cb + 1e-6:
                    res.failures.append(f"DFT bound fails at D={D}, c={c}, m={m}")
                if zero_mask.any() and np.max(vals[zero_mask]) > 1e-8 * cb:
                    res.failures.append(f"zero structure fails at D={D}, c={c}, m={m}")
                sup = bounds.twisted_partial_sup(m, c, chi)
                if sup > bounds.twisted_partial_bound(c, D):
                    res.failures.append(f"partial sup fails at D={D}, c={c}, m={m}")
    return _finish(res, t0)


def tails_suite(max_lambda: int = 1000, cutoff: int = 10**6) -> SuiteResult:
    """One-sided tau-tail check: sum_{lam <= n <= cutoff} tau(n)/n^(3/2)
    <= (2 log lam + 7)/sqrt(lam); dropping the remainder only weakens
    the left side."""
    t0 = time.time()
    res = SuiteResult("tails")
    tau = np.zeros(cutoff + 1, dtype=np.int32)
    for d in range(1, cutoff + 1):
        tau[d::d] += 1
    terms = tau[1:].astype(np.float64) / np.arange(1, cutoff + 1, dtype=np.float64) ** 1.5
    suffix = np.cumsum(terms[::-1])[::-1]
    lam = np.arange(1, max_lambda + 1)
    partial = suffix[lam - 1]
    closed = np.array([bounds.tail_bounds(int(v)).tau_tail for v in lam])
    res.checks += max_lambda
    bad = np.nonzero(partial > closed)[0]
    for i in bad:
        res.failures.append(f"tau tail fails at lambda={lam[i]}")
    # Anchor: at lambda = 1 the full sum is about 6.8 against the bound 7.
    res.check(6.7 < partial[0] < 7.0, f"lambda=1 partial sum {partial[0]:.3f} not ~6.8")
    n = np.arange(1, max_lambda + 1, dtype=np.float64)
    harm = np.cumsum(1.0 / n)
    logn = np.cumsum(np.log(n) / n)
    for lam_i in range(1, max_lambda + 1):
        res.check(
            harm[lam_i - 1] <= bounds.tail_bounds(lam_i).harmonic + 1e-12,
            f"harmonic bound fails at {lam_i}",
        )
    # The log(n)/n comparison is false for 2 <= lambda <= 20 (the partial
    # sum sits up to 0.11 above log(lambda)^2/2 there) and true outside;
    # verify exactly that split rather than the blanket claim.
    log_fails = {
        lam_i
        for lam_i in range(1, max_lambda + 1)
        if logn[lam_i - 1] > bounds.tail_bounds(lam_i).log_over_n + 1e-12
    }
    res.check(
        log_fails == set(range(2, 21)),
        f"log/n failure set changed: {sorted(log_fails)[:25]}",
    )
    return _finish(res, t0)


def runge_suite(seed: int = DEFAULT_SEED, samples: int = 200) -> SuiteResult:
    """Functional equations of the modular unit, deviation bounds on
    reduced points, the reduction |q| invariant, the two estimate-chain
    inequalities and the j-invariant/q comparison."""
    t0 = time.time()
    res = SuiteResult("runge")
    rng = np.random.default_rng(seed)

    for _ in range(50):
        tau = UpperHalfPoint(float(rng.uniform(-0.5, 0.5)), float(rng.uniform(0.9, 3.0)))
        for p in (2, 3, 5, 7, 11):
            pw = float(p) ** 12
            w = UpperHalfPoint.from_complex(-1.0 / tau.z)
            v1 = runge.unit_g(w, p) * runge.unit_g(UpperHalfPoint.from_complex(tau.z / p), p)
            res.check(abs(v1 - pw) <= 1e-8 * pw, f"g(-1/t)g(t/p) != p^12 at p={p}")
            wp = UpperHalfPoint.from_complex(-1.0 / (p * tau.z))
            v2 = runge.unit_g(wp, p) * runge.unit_g(tau, p)
            res.check(abs(v2 - pw) <= 1e-8 * pw, f"Atkin-Lehner form fails at p={p}")

    # Deviations on reduced points (reduce a random cloud first).
    reduced: list[UpperHalfPoint] = []
    while len(reduced) < samples:
        tau = UpperHalfPoint(float(rng.uniform(-2.5, 2.5)), float(rng.uniform(0.05, 2.0)))
        r, _ = runge.reduce_to_fundamental_domain(tau)
        reduced.append(r)
        abs_q = math.exp(-2.0 * math.pi * r.im)
        res.check(abs_q <= math.exp(-math.pi * math.sqrt(3)) + 1e-9, "reduced |q| too big")
    for r in reduced:
        abs_q = math.exp(-2.0 * math.pi * r.im)
        for p in (2, 3, 5, 7, 11):
            dev = runge.g_deviation(r, p)
            near_inf_bound = 25.0 * abs_q
            near_zero_bound = (
                4.0 * math.pi**2 * p / (2.0 * math.pi * r.im) + 12.0 * math.log(p)
            )
            res.check(dev.near_inf_dev <= near_inf_bound, f"near-inf deviation p={p}")
            res.check(dev.near_zero_dev <= near_zero_bound, f"near-zero deviation p={p}")

    # Estimate chains behind the final Runge bound.  The near-zero chain
    # is false at p = 2 (by 0.8395; the quadratic only gives ~23.39 there
    # against the claimed 20.04) and true from p = 3 on; pin that split.
    for p in range(2, 10_001):
        res.check(
            (25.0 * 0.005 + 12.0 * math.log(p)) / (p - 1) <= 2.0 * math.pi * math.sqrt(p),
            f"near-infinity chain fails at p={p}",
        )
        margin = (
            2.0 * math.pi * math.sqrt(p) + 6.0 * math.log(p) + 7.0
            - 2.0 * math.pi * p / math.sqrt(p - 1) - 6.0 * p * math.log(p) / (p - 1)
        )
        if p == 2:
            res.check(abs(margin + 0.8395) < 1e-3, "p=2 chain gap moved")
        else:
            res.check(margin >= 0.0, f"near-zero chain fails at p={p}")

    # log|j| <= log|q^-1| + log 2 once |j| > 3500, on reduced points.
    n_spot = 0
    while n_spot < samples:
        tau = UpperHalfPoint(float(rng.uniform(-0.5, 0.5)), float(rng.uniform(0.9, 2.5)))
        r, _ = runge.reduce_to_fundamental_domain(tau)
        jv = abs(runge.j_invariant(r))
        if jv <= 3500.0:
            continue
        n_spot += 1
        res.check(
            math.log(jv) <= 2.0 * math.pi * r.im + math.log(2.0) + 1e-9,
            f"j/q comparison fails at im={r.im:.3f}",
        )

    res.check(
        abs(runge.runge_j_bound(2) - 21.045) <= 1e-3, "runge_j_bound(2) != 21.045"
    )
    # |J1(x)| <= x/2 (feeds every Weil-induced series bound).
    xs = rng.uniform(0.0, 1000.0, 100_000)
    vals = np.abs(bessel_j1(xs))
    res.checks += xs.size
    if np.any(vals > xs / 2.0 + 1e-15):
        res.failures.append("|J1(x)| <= x/2 fails")
    return _finish(res, t0)


def compgroup_suite(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Closed-form match of the component groups, the tabulated reduction
    values, the two-torsion sweep and random SNF sanity."""
    t0 = time.time()
    res = SuiteResult("compgroup")
    for p in (11, 23, 37, 59, 101, 997):
        for e in (1, 2, 3, 5):
            try:
                compgroup.component_group(p, e)  # raises if any check fails
                res.check(True, "")
            except ArithmeticError as exc:
                res.check(False, f"component_group({p},{e}): {exc}")

    F = Fraction
    cells = {
        (1, 1): {F(0), F(2)},
        (5, 1): {F(0), F(1), F(2), F(2, 3), F(4, 3)},
        (7, 1): {F(0), F(1), F(2)},
        (11, 1): {F(0), F(1), F(2), F(2, 3), F(4, 3)},
        (1, 2): {F(0), F(1), F(2)},
        (5, 2): {F(0), F(1), F(2), F(1, 3), F(2, 3), F(4, 3), F(5, 3)},
        (7, 2): {F(0), F(1), F(2), F(1, 2), F(3, 2)},
        (11, 2): {F(0), F(1), F(2), F(1, 3), F(1, 2), F(2, 3), F(4, 3), F(3, 2), F(5, 3)},
    }
    for p in (37, 17, 19, 23):
        for e in (1, 2):
            got = set(compgroup.rho_value_set(p, e).values)
            res.check(
                got == cells[(p % 12, e)],
                f"rho table cell ({p % 12}, e={e}) mismatch: {sorted(got)}",
            )

    trues = [
        p
        for p in range(11, 10_000)
        if is_prime(p) and (p == 11 or p > 13) and compgroup.two_torsion_obstruction(p)
    ]
    res.check(trues == [17, 41], f"two-torsion sweep gave {trues}")

    rng = np.random.default_rng(seed)
    for _ in range(100):
        rows = int(rng.integers(1, 6))
        cols = int(rng.integers(1, 6))
        M = rng.integers(-20, 21, size=(rows, cols)).tolist()
        snf = compgroup.smith_normal_form(M)
        prod = _matmul(_matmul(snf.left, M), snf.right)
        ok = all(
            prod[i][j] == (snf.diagonal[i] if i == j else 0)
            for i in range(rows)
            for j in range(cols)
        )
        res.check(ok, "L*M*R not diagonal")
        res.check(abs(compgroup.integer_determinant(snf.left)) == 1, "det L != +-1")
        res.check(abs(compgroup.integer_determinant(snf.right)) == 1, "det R != +-1")
        nonzero = [d for d in snf.diagonal if d != 0]
        res.check(
            all(nonzero[i + 1] % nonzero[i] == 0 for i in range(len(nonzero) - 1)),
            "diagonal not a divisibility chain",
        )
    return _finish(res, t0)


def _matmul(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def certify_grid_suite(d_lo: int = 15, d_hi: int = 403) -> SuiteResult:
    """Nonvanishing certificates across fundamental discriminants, plus
    the final-threshold consistency checks."""
    t0 = time.time()
    res = SuiteResult("certify-grid")
    for D in fundamental_discriminants(d_lo, d_hi):
        chi = make_character(D)
        p = next_prime(math.floor(isogeny.nonsplit_threshold(D)))
        while D % p == 0:
            p = next_prime(p)
        cert = trace.certify_nonvanishing(p, chi)
        res.check(
            cert.certified, f"certificate indeterminate at D={D}, p={p} ({cert.lower_bound:.4f})"
        )

    report = isogeny.main_thresholds(3)
    res.check(
        (report.borel, report.split_cartan, report.nonsplit_cartan, report.exceptional)
        == (2e13, 1e7, 1e7, 67),
        "main_thresholds(3) mismatch",
    )
    borel = isogeny.contradiction_search("borel")
    cartan = isogeny.contradiction_search("cartan")
    res.check(
        1.9e13 < borel.max_allowed_p <= 2e13,
        f"borel sweep {borel.max_allowed_p:.4e} outside (1.9e13, 2e13]",
    )
    res.check(
        cartan.max_allowed_p < 1e7, f"cartan sweep {cartan.max_allowed_p:.4e} >= 1e7"
    )
    res.check(borel.max_allowed_p < report.borel, "borel threshold not dominant")
    res.check(
        cartan.max_allowed_p < report.split_cartan, "cartan threshold not dominant"
    )

    # Monotonicity of every closed-form bound in h_F and deg_K.
    heights = (0.0, 500.0, 985.0, 1200.0, 5000.0)
    for deg in (1, 2, 3, 5):
        for lo, hi in zip(heights, heights[1:]):
            res.check(
                isogeny.serre_uniform_bound(deg, lo) <= isogeny.serre_uniform_bound(deg, hi),
                f"serre bound not monotone in h_F at deg={deg}",
            )
            a, b = isogeny.qcurve_case_bounds(deg, lo), isogeny.qcurve_case_bounds(deg, hi)
            res.check(a.borel_dp <= b.borel_dp and a.cartan_dp2 <= b.cartan_dp2,
                      f"case bounds not monotone in h_F at deg={deg}")
    for h in heights:
        for lo, hi in ((1, 2), (2, 3), (3, 5)):
            res.check(
                isogeny.serre_uniform_bound(lo, h) <= isogeny.serre_uniform_bound(hi, h),
                f"serre bound not monotone in degree at h_F={h}",
            )

    # The product inequality specializes to the single-curve bounds.
    for deg, h in ((1, 0.0), (2, 985.0), (3, 2000.0)):
        spec_rhs = isogeny.serre_product_inequality(deg, h, [], []).rhs
        res.check(
            abs(spec_rhs - isogeny.serre_uniform_bound(deg, h)) < 1e-3,
            "product inequality does not specialize to the uniform bound",
        )
        res.check(
            abs(spec_rhs - isogeny.qcurve_case_bounds(deg, h).borel_dp) < 1e-3,
            "product inequality does not specialize to the Borel case bound",
        )
    return _finish(res, t0)


def envelope_suite(
    primes: tuple[int, ...] = (7, 11, 13, 73),
    discs: tuple[int, ...] = (3, 4, 15),
    rel_tol: float = 1e-4,
    t_max: int = 64,
    d_max: int = 200,
) -> SuiteResult:
    """Certified closed-form bounds dominate the numeric series:
    |A_numeric| <= A_bound + error, likewise for B, over all three
    (m, N) shapes; plus certificate/numeric soundness at one point."""
    t0 = time.time()
    res = SuiteResult("envelope")
    for p in primes:
        for D in discs:
            if D % p == 0:
                continue
            chi = make_character(D)
            for m, N in ((1, p * p), (1, p), (p, p)):
                a = trace.A_numeric(m, chi, N, rel_tol, t_max)
                res.check(
                    abs(a.value) <= trace.A_bound(m, chi, N) + a.error_bound,
                    f"A envelope fails at m={m}, N={N}, D={D}",
                )
                b = trace.B_numeric(m, chi, N, rel_tol, d_max)
                res.check(
                    abs(b.value) <= trace.B_bound(m, chi, N) + b.error_bound,
                    f"B envelope fails at m={m}, N={N}, D={D}",
                )

    # Soundness: a certified-positive verdict is confirmed by the series.
    chi15 = make_character(15)
    cert = trace.certify_nonvanishing(269, chi15)
    res.check(cert.certified, "certificate at (D, p) = (15, 269) not positive")
    num = trace.new_plus_pairing(269, chi15, rel_tol=1e-6, t_max=96, d_max=300)
    res.check(
        abs(num.value) > 4.0 * math.pi * cert.lower_bound - num.error_bound,
        "numeric series contradicts the certificate at (15, 269)",
    )
    return _finish(res, t0)


SUITES = {
    "weil": weil_suite,
    "trig": trig_suite,
    "twisted": twisted_suite,
    "tails": tails_suite,
    "runge": runge_suite,
    "compgroup": compgroup_suite,
    "certify-grid": certify_grid_suite,
    "envelope": envelope_suite,
}


def run_suite(name: str, max_c: int | None = None, seed: int = DEFAULT_SEED,
              threads: int = 1) -> list[SuiteResult]:
    """Run one named suite, or all of them."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    out = []
    for n in names:
        if n == "weil":
            out.append(weil_suite(max_c or 400, threads=threads))
        elif n in ("runge", "compgroup"):
            out.append(SUITES[n](seed=seed))
        else:
            out.append(SUITES[n]())
    return out
