"""Seed monoids, the end-to-end construction, and self-contained certificates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .configuration import (
    BasicConfiguration,
    ConfigurationError,
    DominatingBasis,
    ShiftedTower,
    flank_configuration,
    shear_matrix,
    mirror_configuration,
    verify_basic_configuration,
)
from .exact import (
    Lattice,
    determinant,
    inverse,
    mat_vec,
    primitive,
    scale,
)
from .fan import (
    Fan,
    SubdivisionStep,
    SupportFunction,
    barycentric,
    closure_fan_with_polytope,
    face_property_violations,
    fan_of_open_variety,
    fan_predicates,
    pick_subdivision_ray,
    projectivity_certificate,
    resolve_except_distinguished,
    stellar_subdivide,
    validate_support_function,
)
from .interchange import (
    SCHEMA_VERSION,
    FormatError,
    check_schema,
    dec_lattice,
    dec_mat,
    dec_num,
    dec_vec,
    dumps,
    enc_lattice,
    enc_mat,
    enc_num,
    enc_vec,
    fan_from_json,
    fan_to_json,
    load_json,
)
from .monoid import AffineMonoid
from .polyhedra import Cone, cone_predicates, dual_cone, facets, multiplicity
from .report import CheckReport

PATHS = ("mirror", "flank")


class PipelineError(RuntimeError):
    """A check failed during construction; carries the report so far."""

    def __init__(self, message: str, report: CheckReport | None = None):
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------------------
# seeds


def seed_monoid_Mr(r: int) -> AffineMonoid:
    """``Z+(1,...,1) + sum Z+(r e_j)`` inside ``Z^r``."""
    if r < 2:
        raise ValueError("r must be at least 2")
    gens = [(1,) * r] + [tuple(r if i == j else 0 for j in range(r)) for i in range(r)]
    return AffineMonoid.from_generators(gens, r)


@dataclass(frozen=True)
class Seed:
    """The seed cone ``C = R+^n`` over ``Z ⊕ gp(M_r)``, written in a basis of that lattice.

    In these coordinates the lattice of ``C`` is ``Z^n``; ``change`` has the
    basis vectors as rows.
    """

    cone: Cone
    change: tuple
    e: tuple
    n_plus: AffineMonoid


def mirror_seed(n: int) -> Seed:
    r = n - 1
    m_r = seed_monoid_Mr(r)
    gens = [(1,) + (0,) * r] + [(0,) + g for g in m_r.generators]
    lat = Lattice.from_generators(gens, n)
    change = lat.basis
    inv = inverse(change)
    c = Cone.from_generators([primitive(row) for row in inv], n)
    zn = Lattice.standard(n)
    bad = [u for u, f in facets(c) if not cone_predicates(f, zn).unimodular]
    if len(bad) != 1:
        raise PipelineError(f"seed cone has {len(bad)} non-unimodular facets, expected 1")
    # the edge of C^op orthogonal to the non-unimodular facet is spanned by its normal
    e = primitive(bad[0])
    return Seed(c, change, e, AffineMonoid.normal(dual_cone(c)))


def flank_seed(n: int) -> tuple[AffineMonoid, tuple]:
    """``M_r`` in coordinates of a basis of its group, placed in ``Z ⊕ gp(M_r) = Z^n``."""
    r = n - 1
    m_r = seed_monoid_Mr(r)
    gp = m_r.lattice
    rays = [(0,) + tuple(primitive(gp.coordinates(x))) for x in m_r.cone.rays]
    m = AffineMonoid.normal(Cone.from_generators(rays, n))
    return m, (1,) + (0,) * r


# ---------------------------------------------------------------------------
# build


@dataclass
class Options:
    n: int
    depth: int = 4
    height: int = 6
    cap: int = 64
    seed: int = 0
    path: str = "mirror"
    samples: int = 500

    def to_json(self) -> dict:
        return {"n": self.n, "depth": self.depth, "height": self.height, "cap": self.cap,
                "seed": self.seed, "path": self.path, "samples": self.samples}

    @classmethod
    def from_json(cls, data: dict) -> "Options":
        return cls(int(data["n"]), int(data["depth"]), int(data["height"]), int(data["cap"]),
                   int(data["seed"]), str(data["path"]), int(data["samples"]))


@dataclass
class Certificate:
    options: Options
    configuration: BasicConfiguration
    seed: Seed | None
    fan_before: Fan
    fan_after: Fan | None = None
    history: list[SubdivisionStep] = field(default_factory=list)
    support: SupportFunction | None = None
    checks: CheckReport = field(default_factory=CheckReport)


def build_counterexample(n: int, depth: int = 4, height: int = 6, cap: int = 64, seed: int = 0,
                         path: str = "mirror", samples: int = 500, t_cap: int = 16) -> Certificate:
    """Seed, configuration, closure fan, resolution and projectivity, with all checks run.

    Raises :class:`PipelineError` naming the first failed check.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if path not in PATHS:
        raise ValueError(f"unknown path {path!r}")
    opts = Options(n, depth, height, cap, seed, path, samples)
    if path == "mirror":
        sd = mirror_seed(n)
        try:
            cfg = mirror_configuration(sd.n_plus, sd.e, depth=depth, cap=cap)
        except ConfigurationError as exc:
            raise PipelineError(f"configuration: {exc}") from exc
        before = closure_fan_with_polytope(cfg).fan
        after, history = resolve_except_distinguished(before)
        support = projectivity_certificate(after)
        cert = Certificate(opts, cfg, sd, before, after, history, support)
    else:
        m, e = flank_seed(n)
        cfg = None
        for t in range(1, t_cap + 1):
            candidate = flank_configuration(m, e, t, depth)
            rep = verify_basic_configuration(candidate, height, admissible=False)
            if rep.passed:
                cfg = candidate
                break
        if cfg is None:
            raise PipelineError(f"no flank parameter up to {t_cap} gives a basic configuration")
        cert = Certificate(opts, cfg, None, fan_of_open_variety(cfg))
    # the checks run on the serialized form, exactly as a verifier would see it
    cert.checks = certificate_checks(certificate_to_json(cert, with_checks=False))
    if not cert.checks.passed:
        first = cert.checks.failures()[0]
        raise PipelineError(f"check {first.name} failed: {first.detail}", cert.checks)
    return cert


# ---------------------------------------------------------------------------
# serialization


def _monoid_json(m: AffineMonoid) -> dict:
    return {"lattice": enc_lattice(m.lattice), "rays": enc_mat(m.cone.rays), "hilbert_basis": enc_mat(m.generators)}


def _monoid_from(data: dict, n: int) -> AffineMonoid:
    return AffineMonoid(dec_lattice(data["lattice"]), Cone.from_generators(dec_mat(data["rays"]), n),
                        dec_mat(data["hilbert_basis"]))


def _step_json(s: SubdivisionStep) -> dict:
    return {"target": enc_mat(s.target), "ray": enc_vec(s.ray), "result": [enc_mat(c) for c in s.result],
            "target_multiplicity": enc_num(s.target_multiplicity),
            "result_multiplicities": [enc_num(x) for x in s.result_multiplicities]}


def _step_from(data: dict) -> SubdivisionStep:
    return SubdivisionStep(dec_mat(data["target"]), dec_vec(data["ray"]),
                           tuple(dec_mat(c) for c in data["result"]), dec_num(data["target_multiplicity"]),
                           tuple(dec_num(x) for x in data["result_multiplicities"]))


def certificate_to_json(cert: Certificate, with_checks: bool = True) -> dict:
    cfg = cert.configuration
    tower = cfg.tower
    data: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "toricert", "version": __version__},
        "seed": str(cert.options.seed),
        "options": cert.options.to_json(),
        "configuration": {
            "e": enc_vec(cfg.e),
            "offset": None if cfg.offset is None else enc_num(cfg.offset),
            "flank_t": None if cfg.flank_t is None else enc_num(cfg.flank_t),
            "sigma": None if cfg.sigma is None else enc_mat(cfg.sigma),
            "basis": enc_mat(tower.basis.vectors),
            "alpha": enc_mat(tower.alpha),
            "M": _monoid_json(cfg.M),
            "N_plus": _monoid_json(cfg.N_plus),
            "N_minus": _monoid_json(cfg.N_minus),
            "tower": [_monoid_json(m) for m in tower.members],
        },
        "seed_cone": None if cert.seed is None else {
            "rays": enc_mat(cert.seed.cone.rays), "change": enc_mat(cert.seed.change)},
        "fan_before": fan_to_json(cert.fan_before),
        "fan_after": None if cert.fan_after is None else fan_to_json(cert.fan_after),
        "history": [_step_json(s) for s in cert.history],
        "support_function": None if cert.support is None else {
            "values": enc_vec(cert.support.values), "functionals": enc_mat(cert.support.functionals)},
    }
    if with_checks:
        data["checks"] = cert.checks.to_json()
    return data


def write_certificate(cert: Certificate, path) -> None:
    Path(path).write_text(dumps(certificate_to_json(cert)))


def certificate_text(cert: Certificate) -> str:
    return dumps(certificate_to_json(cert))


@dataclass
class _Decoded:
    options: Options
    cfg: BasicConfiguration
    seed_cone: Cone | None
    seed_change: tuple | None
    before: Fan
    after: Fan | None
    history: list[SubdivisionStep]
    support: SupportFunction | None


def _decode(data: dict) -> _Decoded:
    try:
        check_schema(data)
        opts = Options.from_json(data["options"])
        n = opts.n
        c = data["configuration"]
        e = dec_vec(c["e"])
        basis = DominatingBasis(dec_mat(c["basis"]), e)
        m = _monoid_from(c["M"], n)
        members = tuple(_monoid_from(x, n) for x in c["tower"])
        tower = ShiftedTower(m, basis, members, dec_mat(c["alpha"]))
        offset = None if c["offset"] is None else int(dec_num(c["offset"]))
        flank_t = None if c["flank_t"] is None else int(dec_num(c["flank_t"]))
        sigma = None if c["sigma"] is None else dec_mat(c["sigma"])
        cfg = BasicConfiguration(m, _monoid_from(c["N_plus"], n), _monoid_from(c["N_minus"], n), e, tower,
                                 offset, flank_t, sigma)
        sc = data["seed_cone"]
        seed_cone = None if sc is None else Cone.from_generators(dec_mat(sc["rays"]), n)
        change = None if sc is None else dec_mat(sc["change"])
        before = fan_from_json(data["fan_before"], canonicalize=False)
        after = None if data["fan_after"] is None else fan_from_json(data["fan_after"], canonicalize=False)
        history = [_step_from(s) for s in data["history"]]
        sf = data["support_function"]
        support = None if sf is None else SupportFunction(dec_vec(sf["values"]), dec_mat(sf["functionals"]))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise FormatError(f"malformed certificate: {exc!r}") from exc
    return _Decoded(opts, cfg, seed_cone, change, before, after, history, support)


# ---------------------------------------------------------------------------
# checks


_EVAL_ERRORS = (ValueError, ZeroDivisionError, TypeError, IndexError, KeyError, StopIteration)


def _guarded(rep: CheckReport, name: str, fn) -> None:
    """Add check ``name`` from ``fn() -> (passed, detail)``; evaluation errors count as failures."""
    try:
        passed, detail = fn()
    except _EVAL_ERRORS as exc:
        passed, detail = False, f"cannot evaluate: {exc!r}"
    rep.add(name, passed, detail)


def _canonical_problems(fan: Fan) -> list[str]:
    out = []
    for r in fan.rays:
        if any(not isinstance(x, int) for x in r):
            out.append(f"ray {list(r)} is not integral")
        elif not any(r):
            out.append("zero ray")
        elif primitive(r) != r:
            out.append(f"ray {list(r)} is not primitive")
    if list(fan.rays) != sorted(set(fan.rays)):
        out.append("rays are not sorted and distinct")
    if any(list(c) != sorted(set(c)) for c in fan.cones) or list(fan.cones) != sorted(set(fan.cones)):
        out.append("cones are not in canonical order")
    if any(i not in {j for c in fan.cones for j in c} for i in range(len(fan.rays))):
        out.append("unused ray")
    return out


def _fan_checks(rep: CheckReport, prefix: str, fan: Fan, exact_distinguished: bool) -> None:
    def canonical():
        problems = _canonical_problems(fan)
        return not problems, "; ".join(problems[:3])

    def predicates():
        return fan_predicates(fan, fan.distinguished or ())

    def faces():
        bad = face_property_violations(fan)
        return not bad, f"cones {bad[0]} meet badly" if bad else ""

    _guarded(rep, f"{prefix}_rays_primitive", canonical)
    _guarded(rep, f"{prefix}_complete", lambda: (predicates().complete, ""))
    _guarded(rep, f"{prefix}_simplicial", lambda: (predicates().simplicial, ""))
    _guarded(rep, f"{prefix}_face_property", faces)
    if exact_distinguished:
        def smooth():
            dist = frozenset(fan.distinguished or ())
            bad = predicates().smooth_except
            return (bad == dist and len(dist) == 2,
                    f"non-unimodular cones {sorted(bad)}, distinguished {sorted(dist)}")
        _guarded(rep, "smooth_except_distinguished", smooth)


def _point_in_fan(fan: Fan, x) -> bool:
    for i in range(len(fan.cones)):
        a = barycentric(fan.cone_rays(i), x)
        if a is not None and all(v >= 0 for v in a):
            return True
    return False


def _seed_check(d: _Decoded) -> tuple[bool, str]:
    cfg, n = d.cfg, d.options.n
    if d.seed_cone is None:
        return False, "seed cone missing"
    fails = []
    zn = Lattice.standard(n)
    non_uni = [u for u, f in facets(d.seed_cone) if not cone_predicates(f, zn).unimodular]
    if len(non_uni) != 1:
        fails.append(f"{len(non_uni)} non-unimodular facets")
    elif primitive(non_uni[0]) != cfg.e:
        fails.append("e is not the edge orthogonal to the non-unimodular facet")
    if dual_cone(d.seed_cone) != cfg.N_plus.cone or cfg.N_plus.lattice != zn:
        fails.append("N+ is not C^op ∩ Z^n")
    rays = [mat_vec(d.seed_change, r) for r in d.seed_cone.rays]
    if any(sum(1 for x in r if x) != 1 or min(r) < 0 for r in rays):
        fails.append("seed cone is not the positive orthant in original coordinates")
    expected = [(1,) + (0,) * (n - 1)] + [(0,) + g for g in seed_monoid_Mr(n - 1).generators]
    if Lattice.from_generators(d.seed_change, n) != Lattice.from_generators(expected, n):
        fails.append("seed lattice is not Z ⊕ gp(M_r)")
    return not fails, "; ".join(fails)


def _mirror_check(cfg: BasicConfiguration) -> tuple[bool, str]:
    if cfg.sigma is None or abs(determinant(cfg.sigma)) != 1:
        return False, "|det sigma| != 1"
    fails = []
    if mat_vec(cfg.sigma, cfg.e) != scale(-1, cfg.e):
        fails.append("sigma(e) != -e")
    for x in cfg.tower.basis.vectors:
        if mat_vec(cfg.sigma, x) != mat_vec(cfg.tower.alpha, x):
            fails.append(f"sigma({list(x)}) != alpha({list(x)})")
    img = Cone.from_generators([mat_vec(cfg.sigma, r) for r in cfg.N_plus.cone.rays], cfg.ambient_dim)
    if img != cfg.N_minus.cone:
        fails.append("N- != sigma(N+)")
    return not fails, "; ".join(fails)


def _replay(before: Fan, after: Fan, history: list[SubdivisionStep]) -> tuple[bool, str]:
    """Re-run the resolution loop step by step against the recorded history."""
    fan = before
    n = before.ambient_dim
    for k, step in enumerate(history):
        dist = fan.distinguished_ray_sets()
        mults = fan_predicates(fan).multiplicities
        candidates = [(mults[i], -i) for i in range(len(fan.cones)) if frozenset(fan.cone_rays(i)) not in dist]
        m, i = max(candidates, default=(1, 0))
        if m <= 1:
            return False, f"step {k}: nothing left to subdivide"
        target = fan.cone_rays(-i)
        if sorted(target) != sorted(step.target):
            return False, f"step {k}: target mismatch"
        z = pick_subdivision_ray(Cone.from_generators(target, n), fan.lattice)
        if z != step.ray:
            return False, f"step {k}: ray {list(step.ray)} recorded, {list(z)} expected"
        new = stellar_subdivide(fan, z)
        old = set(fan.ray_sets())
        pieces = sorted(tuple(sorted(c)) for c in new.ray_sets() if c not in old and c - {z} <= set(target))
        if pieces != sorted(tuple(sorted(c)) for c in step.result):
            return False, f"step {k}: recorded result cones differ"
        fan = new
    final = fan_predicates(fan).multiplicities
    if any(m > 1 for i, m in enumerate(final) if frozenset(fan.cone_rays(i)) not in fan.distinguished_ray_sets()):
        return False, "history stops before the fan is resolved"
    if fan != after:
        return False, "replayed fan differs from the recorded final fan"
    return True, f"{len(history)} steps"


def _termination(history: list[SubdivisionStep]) -> tuple[bool, str]:
    bad = []
    for k, step in enumerate(history):
        m = multiplicity(step.target)
        pieces = [multiplicity(c) for c in step.result]
        if m != step.target_multiplicity or tuple(pieces) != tuple(step.result_multiplicities):
            bad.append(f"step {k}: recorded multiplicities are wrong")
        elif not pieces or any(x >= m for x in pieces):
            bad.append(f"step {k}: {pieces} not below {m}")
    return not bad, "; ".join(bad[:3]) if bad else f"{len(history)} steps, all decreasing"


def _support_preserved(before: Fan, after: Fan, seed: int, samples: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    n = before.ambient_dim
    disagree = 0
    for _ in range(samples):
        x = tuple(rng.randint(-50, 50) for _ in range(n))
        if _point_in_fan(before, x) != _point_in_fan(after, x):
            disagree += 1
    return disagree == 0, f"{samples} sampled points, {disagree} disagreements"


def certificate_checks(data: dict) -> CheckReport:
    """Every named check, computed from the serialized certificate alone."""
    d = _decode(data)
    cfg, opts = d.cfg, d.options
    rep = CheckReport()
    mirror = opts.path == "mirror"

    def recorded():
        ms = [("M", cfg.M), ("N_plus", cfg.N_plus), ("N_minus", cfg.N_minus)]
        ms += [(f"M_{i}", m) for i, m in enumerate(cfg.tower.members)]
        bad = [name for name, m in ms if tuple(sorted(m.generators)) != m.hilbert_basis]
        return not bad, f"mismatch for {bad}" if bad else ""

    def nonfree():
        hb = cfg.M.hilbert_basis
        return len(hb) > cfg.M.rank and not cfg.M.flags.free, f"Hilbert basis size {len(hb)}, rank {cfg.M.rank}"

    _guarded(rep, "hilbert_bases_recorded", recorded)
    _guarded(rep, "M_nonfree", nonfree)
    if mirror:
        _guarded(rep, "seed_cone", lambda: _seed_check(d))
        _guarded(rep, "mirror", lambda: _mirror_check(cfg))
    _guarded(rep, "alpha_matrix", lambda: (cfg.tower.alpha == shear_matrix(cfg.e, cfg.tower.basis.vectors),
                                           "alpha must be the shear e -> e, x_j -> x_j - e"))
    try:
        rep.extend(verify_basic_configuration(cfg, opts.height, admissible=mirror))
    except _EVAL_ERRORS as exc:
        rep.add("configuration", False, f"cannot evaluate: {exc!r}")

    open_fan: list[Fan] = []

    def glued():
        open_fan.append(fan_of_open_variety(cfg))
        return True, f"{len(open_fan[0].rays)} rays"

    _guarded(rep, "open_fan_glued", glued)
    before = d.before
    if not mirror:
        _guarded(rep, "open_fan_matches", lambda: (bool(open_fan) and open_fan[0] == before, ""))
        _fan_checks_open(rep, before)
        return rep

    _guarded(rep, "closure_fan_matches", lambda: (closure_fan_with_polytope(cfg).fan == before,
                                                  "recorded fan vs the closure fan of the configuration"))
    _fan_checks(rep, "closure", before, exact_distinguished=False)

    def closure_distinguished():
        got = {frozenset(before.cone_rays(i)) for i in before.distinguished}
        want = {frozenset(open_fan[0].cone_rays(i)) for i in range(2)}
        return got == want, "" if got == want else "distinguished cones are not (R+N±)^op"

    _guarded(rep, "closure_distinguished", closure_distinguished)

    after = d.after
    if after is None:
        rep.add("resolution_present", False, "no resolved fan")
        return rep
    _fan_checks(rep, "final", after, exact_distinguished=True)
    _guarded(rep, "resolution_replay", lambda: _replay(before, after, d.history))
    _guarded(rep, "termination_measure", lambda: _termination(d.history))
    _guarded(rep, "distinguished_invariant", lambda: (
        after.distinguished is not None
        and set(after.distinguished_ray_sets()) == set(before.distinguished_ray_sets()), ""))
    _guarded(rep, "support_preserved", lambda: _support_preserved(before, after, opts.seed, opts.samples))

    def projective():
        if d.support is None:
            return False, "no support function found"
        problems = validate_support_function(after, d.support)
        return not problems, problems[0] if problems else "strictly convex support function"

    _guarded(rep, "projectivity", projective)
    return rep


def _fan_checks_open(rep: CheckReport, fan: Fan) -> None:
    def canonical():
        problems = _canonical_problems(fan)
        return not problems, "; ".join(problems[:3])

    def faces():
        bad = face_property_violations(fan)
        return not bad, f"cones {bad[0]} meet badly" if bad else ""

    _guarded(rep, "open_rays_primitive", canonical)
    _guarded(rep, "open_face_property", faces)


def compare_reports(embedded: CheckReport, fresh: CheckReport) -> list[str]:
    out = []
    for name in sorted(set(embedded.names()) | set(fresh.names())):
        if name not in embedded or name not in fresh:
            out.append(f"{name}: present in only one report")
        elif embedded[name] != fresh[name]:
            out.append(f"{name}: embedded {embedded[name].passed}, recomputed {fresh[name].passed}")
    return out


def verify_certificate(path) -> CheckReport:
    """Re-run every check from the file; mismatches with the embedded report are added as failures."""
    data = load_json(path)
    fresh = certificate_checks(data)
    if "checks" not in data:
        raise FormatError("missing field 'checks'")
    try:
        embedded = CheckReport.from_json(data["checks"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed checks: {exc}") from exc
    mismatches = compare_reports(embedded, fresh)
    if mismatches:
        fresh.add("embedded_report", False, "; ".join(mismatches[:5]))
    return fresh


__all__ = [
    "Certificate", "Options", "PipelineError", "Seed", "build_counterexample", "certificate_checks",
    "certificate_text", "certificate_to_json", "compare_reports", "flank_seed", "seed_monoid_Mr",
    "mirror_seed", "verify_certificate", "write_certificate",
]
