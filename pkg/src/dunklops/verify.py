"""Suite configuration, polynomial sampling, report assembly and the runner.

A suite run is fully determined by (config, seed): every check derives its
per-trial seeds from the master seed and its own id, sampling uses Python's
portable Mersenne generator, and reports serialize with stable key order, so
two runs with the same config are byte-identical except for timing fields.
"""

from __future__ import annotations

import json
import random
import sys
import time
import zlib
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Optional, Sequence

from . import __version__
from .errors import DunklError
from .groups import (
    KIND_GENERAL,
    KIND_Z2D,
    RootSystem,
    permutation_group,
    validate_root_system,
)
from .operators import OperatorContext
from .poly import MultiPoly
from .quadrature import WeightedDomain, integrate
from .domains import symmetrize

DEFAULT_SUITES = (
    "identities",
    "integration_by_parts",
    "harmonics",
    "isometry",
    "uncertainty",
    "ball_eigen",
    "constants",
    "oracle",
)


@dataclass(frozen=True)
class SuiteConfig:
    """Everything a reproducible verification run depends on."""

    root_system: RootSystem
    seed: int = 12345
    degree_cap: int = 6
    trials: int = 50
    mc_samples: int = 10**6
    direction_samples: int = 64
    tiers_allowed: tuple = ("A", "B", "C")
    suites: tuple = DEFAULT_SUITES
    mu_ball: Q = Q(1, 2)
    mu_simplex: Q = Q(1, 2)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.degree_cap < 2:
            raise ValueError("degree_cap must be >= 2")
        if self.mc_samples < 10**3:
            raise ValueError("mc_samples must be >= 1000")
        unknown = set(self.suites) - set(DEFAULT_SUITES)
        if unknown:
            raise ValueError(f"unknown suites: {sorted(unknown)}")
        object.__setattr__(self, "tiers_allowed", tuple(self.tiers_allowed))
        object.__setattr__(self, "suites", tuple(self.suites))
        object.__setattr__(self, "mu_ball", Q(self.mu_ball))
        object.__setattr__(self, "mu_simplex", Q(self.mu_simplex))

    def as_record(self) -> dict:
        rs = self.root_system
        return {
            "root_system": {
                "kind": rs.kind,
                "dimension": rs.dimension,
                "roots": [
                    {
                        "vector": [str(c) for c in r.vector],
                        "multiplicity": str(r.multiplicity),
                    }
                    for r in rs.positive_roots
                ],
            },
            "seed": self.seed,
            "degree_cap": self.degree_cap,
            "trials": self.trials,
            "mc_samples": self.mc_samples,
            "direction_samples": self.direction_samples,
            "tiers_allowed": list(self.tiers_allowed),
            "suites": list(self.suites),
            "mu_ball": str(self.mu_ball),
            "mu_simplex": str(self.mu_simplex),
        }


def _parse_root_system(section: dict) -> RootSystem:
    kind = section.get("kind", "z2d")
    if kind == "z2d":
        kappa = [Q(str(k)) for k in section["kappa"]]
        return RootSystem.z2d(kappa)
    if kind in ("general", KIND_GENERAL):
        dim = int(section["dimension"])
        roots = [
            (tuple(Q(str(c)) for c in r["vector"]), Q(str(r["multiplicity"])))
            for r in section["roots"]
        ]
        return RootSystem.general(dim, roots)
    raise ValueError(f"unknown root system kind {kind!r}")


def config_from_dict(data: dict) -> SuiteConfig:
    kwargs = {}
    if "root_system" not in data:
        raise ValueError("config needs a [root_system] table")
    kwargs["root_system"] = _parse_root_system(data["root_system"])
    for key in ("seed", "degree_cap", "trials", "mc_samples", "direction_samples"):
        if key in data:
            kwargs[key] = int(data[key])
    if "tiers_allowed" in data:
        kwargs["tiers_allowed"] = tuple(data["tiers_allowed"])
    if "suites" in data:
        kwargs["suites"] = tuple(data["suites"])
    if "ball" in data and "mu" in data["ball"]:
        kwargs["mu_ball"] = Q(str(data["ball"]["mu"]))
    if "simplex" in data and "mu" in data["simplex"]:
        kwargs["mu_simplex"] = Q(str(data["simplex"]["mu"]))
    return SuiteConfig(**kwargs)


def load_config(path: str) -> SuiteConfig:
    if sys.version_info >= (3, 11):
        import tomllib
    else:
        import tomli as tomllib
    with open(path, "rb") as fh:
        return config_from_dict(tomllib.load(fh))


def derive_seed(base: int, check_id: str, trial: int) -> int:
    tag = zlib.crc32(check_id.encode("utf-8"))
    return (base * 1_000_003 + tag * 101 + trial) % (2**31 - 1)


def sample_polynomial(
    seed: int,
    dimension: int,
    degree_cap: int,
    invariant_group: Optional[Sequence] = None,
    symmetric: bool = False,
    mean_zero_domain: Optional[WeightedDomain] = None,
    terms: int = 6,
) -> MultiPoly:
    """Seeded sparse polynomial with integer coefficients in [-9, 9].

    Post-processing, in order: group symmetrization (making the sample
    invariant), permutation symmetrization, exact mean removal against the
    given domain. Resamples up to 100 times if the result collapses to zero
    (or to a constant when a mean is removed).
    """
    rng = random.Random(seed)
    for _ in range(100):
        raw = {}
        for _ in range(terms):
            expo = [0] * dimension
            for _ in range(rng.randint(0, degree_cap)):
                expo[rng.randrange(dimension)] += 1
            key = tuple(expo)
            raw[key] = raw.get(key, 0) + rng.randint(-9, 9)
        p = MultiPoly(dimension, {e: Q(c) for e, c in raw.items() if c})
        if invariant_group is not None:
            p = symmetrize(p, invariant_group)
        if symmetric:
            p = symmetrize(p, permutation_group(dimension))
        if mean_zero_domain is not None:
            p = p - MultiPoly.constant(dimension, integrate(mean_zero_domain, p))
        if not p.is_zero():
            return p
    raise DunklError("polynomial sampling exhausted its resampling budget")


@dataclass
class CheckOutcome:
    status: str  # "pass" | "fail" | "skipped"
    trials: int
    counterexample: Optional[dict] = None
    detail: str = ""


@dataclass(frozen=True)
class Check:
    check_id: str
    equation: str  # numbered equation, theorem label, or "plumbing"
    suite: str
    description: str
    run: object  # callable(env) -> CheckOutcome


class CheckEnv:
    """Shared context handed to every check; built once per run."""

    def __init__(self, config: SuiteConfig):
        self.config = config
        # full validation, including the conjugacy-multiplicity consistency
        # computed against the generated group
        self._group = validate_root_system(config.root_system)
        self.ctx = OperatorContext.for_system(config.root_system)
        self.dimension = config.root_system.dimension
        self.ctx0 = OperatorContext.trivial(self.dimension)
        # one-variable configs have no sphere; sphere-based checks skip
        self._sphere_dom = (
            WeightedDomain.sphere(config.root_system) if self.dimension >= 2 else None
        )
        self.ball_dom = WeightedDomain.ball(config.root_system, config.mu_ball)
        if config.root_system.is_sign_change_invariant():
            self.simplex_dom = WeightedDomain.simplex(
                config.root_system, config.mu_simplex
            )
        else:
            self.simplex_dom = None

    @property
    def sphere_dom(self) -> WeightedDomain:
        if self._sphere_dom is None:
            raise DunklError("no sphere domain in one variable")
        return self._sphere_dom

    @property
    def group(self):
        return self._group

    def seed_for(self, check_id: str, trial: int) -> int:
        return derive_seed(self.config.seed, check_id, trial)

    def sample(self, seed: int, **kwargs) -> MultiPoly:
        return sample_polynomial(
            seed, self.dimension, self.config.degree_cap, **kwargs
        )

    def tier_allowed(self, tier: str) -> bool:
        return tier in self.config.tiers_allowed

    def exact_tier(self) -> Optional[str]:
        """Tier needed for exact integration against the config weight."""
        return "A" if self.config.root_system.kind == KIND_Z2D else "B"


def trial_loop(env: CheckEnv, check_id: str, body, trials: Optional[int] = None) -> CheckOutcome:
    """Run body(trial, seed) until it reports a failure witness.

    body returns None on success or (polynomial_text, message) on failure.
    """
    total = env.config.trials if trials is None else trials
    for t in range(total):
        seed = env.seed_for(check_id, t)
        failure = body(t, seed)
        if failure is not None:
            poly_text, msg = failure
            return CheckOutcome(
                "fail",
                t + 1,
                {"seed": seed, "polynomial": poly_text, "detail": msg},
            )
    return CheckOutcome("pass", total)


def skipped(reason: str) -> CheckOutcome:
    return CheckOutcome("skipped", 0, None, reason)


@dataclass
class VerificationReport:
    config: SuiteConfig
    records: list

    @property
    def failed(self) -> bool:
        return any(r["status"] == "fail" for r in self.records)

    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.records:
            out[r["status"]] += 1
        out["total"] = len(self.records)
        return out

    def as_dict(self) -> dict:
        return {
            "schema_version": "1",
            "tool": {"name": "dunklops", "version": __version__},
            "config": self.config.as_record(),
            "checks": self.records,
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=False)


def run_suite(config: SuiteConfig) -> VerificationReport:
    """Run every check of the configured suites; deterministic given the seed."""
    from .checks import CHECKS

    env = CheckEnv(config)
    records = []
    for check in CHECKS:
        if check.suite not in config.suites:
            continue
        start = time.perf_counter()
        try:
            outcome = check.run(env)
        except DunklError as exc:
            outcome = CheckOutcome("skipped", 0, None, f"unavailable: {exc}")
        elapsed = time.perf_counter() - start
        records.append(
            {
                "check_id": check.check_id,
                "equation": check.equation,
                "suite": check.suite,
                "description": check.description,
                "status": outcome.status,
                "trials": outcome.trials,
                "counterexample": outcome.counterexample,
                "detail": outcome.detail,
                "seconds": round(elapsed, 6),
            }
        )
    records.sort(key=lambda r: r["check_id"])
    return VerificationReport(config, records)


def strip_timings(report_dict: dict) -> dict:
    """Copy of a report dict with timing fields removed (for determinism tests)."""
    out = json.loads(json.dumps(report_dict))
    for rec in out.get("checks", []):
        rec.pop("seconds", None)
    return out
