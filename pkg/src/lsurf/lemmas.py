"""Property suites for the generator-action growth lemmas.

Each check samples seeded points of the required periodicity type, probes a
spread of exponents at or beyond the relevant threshold, and returns a list
of violation records (empty when the property holds on every sample).  These
are the combinatorial facts the tree-shape certification rests on, so the
suites are wired into both the CLI and the acceptance tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .modn import act, project
from .sampling import (
    sample_a_periodic_point,
    sample_b_periodic_point,
    sample_nonperiodic_point,
    sample_point,
)
from .surface import (
    GeneratorWord,
    SurfaceProto,
    apply_A,
    apply_B,
    apply_word,
    delta_A,
    delta_B,
    is_A_periodic,
    is_B_periodic,
    n_value,
    s_value,
    thresholds,
)


@dataclass
class SuiteReport:
    name: str
    samples: int
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def line(self) -> str:
        status = "ok" if self.ok else f"{len(self.violations)} VIOLATIONS"
        return f"{self.name}: {self.samples} samples, {status}"


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _exponent_spread(base: int) -> tuple[int, ...]:
    return (base, base + 1, 2 * base + 3)


def check_s_growth_b_on_a_periodic(
    proto: SurfaceProto, rng: random.Random, samples: int, n_max: int = 6
) -> SuiteReport:
    """A-periodic, not B-periodic: every |l| >= l0 strictly grows s."""
    report = SuiteReport("s-growth under B at A-periodic points", samples)
    for _ in range(samples):
        N = rng.randint(1, n_max)
        P = sample_a_periodic_point(proto, N, rng, b_periodic=False)
        l0 = thresholds(proto, n_value(P)).l0.ceil()
        s0 = s_value(P)
        for l in _exponent_spread(l0):
            for signed in (l, -l):
                if not s0 < s_value(apply_B(P, signed)):
                    report.violations.append({"point": str(P), "l": signed})
    return report


def check_s_growth_a_on_b_periodic(
    proto: SurfaceProto, rng: random.Random, samples: int, n_max: int = 6
) -> SuiteReport:
    """B-periodic, not A-periodic: every |k| >= k0 strictly grows s."""
    report = SuiteReport("s-growth under A at B-periodic points", samples)
    for _ in range(samples):
        N = rng.randint(1, n_max)
        P = sample_b_periodic_point(proto, N, rng, a_periodic=False)
        k0 = thresholds(proto, n_value(P)).k0.ceil()
        s0 = s_value(P)
        for k in _exponent_spread(k0):
            for signed in (k, -k):
                if not s0 < s_value(apply_A(P, signed)):
                    report.violations.append({"point": str(P), "k": signed})
    return report


def check_delta_signs(
    proto: SurfaceProto, rng: random.Random, samples: int, n_max: int = 6
) -> SuiteReport:
    """Opposite nonzero signs of the irrational increments at +-k beyond k0
    (points not periodic under the acting generator), and mirror for B."""
    report = SuiteReport("opposite increment signs beyond the threshold", samples)
    for _ in range(samples):
        N = rng.randint(1, n_max)
        P = sample_point(proto, N, rng, box=200 * N)
        th = thresholds(proto, n_value(P))
        if not is_A_periodic(P):
            k = th.k0.floor() + 1
            for kk in _exponent_spread(k):
                sp, sm = _sgn(delta_A(P, kk)), _sgn(delta_A(P, -kk))
                if sp == 0 or sm == 0 or sp == sm:
                    report.violations.append({"point": str(P), "k": kk, "signs": (sp, sm)})
        if not is_B_periodic(P):
            l = th.l0.floor() + 1
            for ll in _exponent_spread(l):
                sp, sm = _sgn(delta_B(P, ll)), _sgn(delta_B(P, -ll))
                if sp == 0 or sm == 0 or sp == sm:
                    report.violations.append({"point": str(P), "l": ll, "signs": (sp, sm)})
    return report


def check_three_of_four(
    proto: SurfaceProto, rng: random.Random, samples: int, n_max: int = 6
) -> SuiteReport:
    """Doubly non-periodic points: for k > k1, l > l1 at least three of the
    four signed powers strictly grow s."""
    report = SuiteReport("three-of-four growth inequality", samples)
    for _ in range(samples):
        N = rng.randint(1, n_max)
        P = sample_nonperiodic_point(proto, N, rng, box=200 * N)
        th = thresholds(proto, n_value(P))
        s0 = s_value(P)
        for bump in (1, 3):
            k = th.k1.floor() + bump
            l = th.l1.floor() + bump
            grown = sum(
                1
                for Q in (
                    apply_A(P, k),
                    apply_A(P, -k),
                    apply_B(P, l),
                    apply_B(P, -l),
                )
                if s0 < s_value(Q)
            )
            if grown < 3:
                report.violations.append({"point": str(P), "k": k, "l": l, "grown": grown})
    return report


def check_action_additivity(
    proto: SurfaceProto, rng: random.Random, samples: int, n_max: int = 8
) -> SuiteReport:
    """apply(P, k1+k2) equals apply(apply(P, k1), k2) exactly, both generators."""
    report = SuiteReport("power additivity of the actions", samples)
    for _ in range(samples):
        N = rng.randint(1, n_max)
        P = sample_point(proto, N, rng, box=500)
        k1, k2 = rng.randint(-15, 15), rng.randint(-15, 15)
        if apply_A(apply_A(P, k1), k2) != apply_A(P, k1 + k2):
            report.violations.append({"point": str(P), "gen": "A", "k": (k1, k2)})
        if apply_B(apply_B(P, k1), k2) != apply_B(P, k1 + k2):
            report.violations.append({"point": str(P), "gen": "B", "l": (k1, k2)})
    return report


def check_projection_equivariance(
    proto: SurfaceProto, rng: random.Random, samples: int, n_max: int = 12
) -> SuiteReport:
    """project(g . P) == act(project(P), g) for single generator steps."""
    report = SuiteReport("mod-N projection equivariance", samples)
    gens = (("A", 1, "A"), ("A", -1, "A-1"), ("B", 1, "B"), ("B", -1, "B-1"))
    for _ in range(samples):
        N = rng.randint(1, n_max)
        P = sample_point(proto, N, rng, box=400 * N)
        g, e, name = gens[rng.randrange(4)]
        moved = apply_A(P, e) if g == "A" else apply_B(P, e)
        if project(moved) != act(project(P), name, proto):
            report.violations.append({"point": str(P), "gen": name})
    return report


def check_word_n_invariance(
    proto: SurfaceProto,
    rng: random.Random,
    samples: int,
    max_len: int = 20,
    n_max: int = 12,
) -> SuiteReport:
    """Random words preserve the common denominator."""
    report = SuiteReport("denominator invariance under words", samples)
    for _ in range(samples):
        N = rng.randint(1, n_max)
        P = sample_point(proto, N, rng, box=200 * N)
        letters = [
            ("A" if rng.random() < 0.5 else "B", rng.choice((-3, -2, -1, 1, 2, 3)))
            for _ in range(rng.randint(0, max_len))
        ]
        word = GeneratorWord(letters)
        if n_value(apply_word(P, word)) != n_value(P):
            report.violations.append({"point": str(P), "word": str(word)})
    return report


ALL_CHECKS = (
    check_s_growth_b_on_a_periodic,
    check_s_growth_a_on_b_periodic,
    check_delta_signs,
    check_three_of_four,
    check_action_additivity,
    check_projection_equivariance,
    check_word_n_invariance,
)


def run_suites(
    proto: SurfaceProto, seed: int, samples: int, checks=ALL_CHECKS
) -> list[SuiteReport]:
    """Run the selected suites with one derived rng per suite (order-stable)."""
    reports = []
    for idx, check in enumerate(checks):
        rng = random.Random(f"{seed}:{proto.name}:{idx}")
        reports.append(check(proto, rng, samples))
    return reports
