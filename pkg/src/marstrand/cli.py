"""Command-line front end.

Subcommands: ``construct1``, ``construct2``, ``audit``, ``geometry`` and
``gen-target``.  Exit status: 0 when every structural audit passes, 2 on an
audit failure, 1 on usage or precision errors.
"""

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import tomli

from .audit import BuildInputs, verify_build
from .bitcore import BitString
from .construct import build_thm1, build_thm2
from .errors import MarstrandError
from .geometry import (PolarPoint, cart_of_polar, exact_cartesian_box,
                       stated_radius_contains)
from .plot import line_plot_svg
from .schedule import DEFAULT_BUDGET, Schedule
from .streams import PiMultiple, absolute, add, cos_of, cos_pi, negate, parse_angle, parse_real
from .target import RandomBits, TargetSequence

EXIT_OK, EXIT_USAGE, EXIT_AUDIT = 0, 1, 2
COMMANDS = ("construct1", "construct2", "audit", "geometry", "gen-target")
FORMATS = ("json", "csv", "svg")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    schedule: str = "paper"
    stages: int = 4
    cond: list = field(default_factory=list)
    theta: list = field(default_factory=list)
    direction: str = None
    eps: str = "1/2"
    oracle_seed: int = 0
    phi_seed: int = None
    seed: int = 0
    n: int = 128
    out: str = None
    input: str = None
    bit_budget: int = DEFAULT_BUDGET
    formats: list = field(default_factory=lambda: ["json"])
    density: bool = True
    r: str = None
    angle: str = None
    s: int = 16
    points: int = 0

    @property
    def theorem(self):
        return 2 if self.command == "construct2" else 1

    def effective_phi_seed(self):
        return self.oracle_seed + 1 if self.phi_seed is None else self.phi_seed

    def record(self):
        """The fields that determine a build, as stored in run.json."""
        return {
            "command": self.command, "schedule": self.schedule, "stages": self.stages,
            "cond": list(self.cond), "theta": list(self.theta), "direction": self.direction,
            "eps": self.eps, "oracle_seed": self.oracle_seed,
            "phi_seed": self.effective_phi_seed(), "seed": self.seed,
            "bit_budget": self.bit_budget,
        }


def conditions_of(cfg):
    """Multipliers from raw specs plus, per angle theta, |cos(d - theta)| and
    |cos(d + pi/2 - theta)| for the direction d."""
    conds = [parse_real(c) for c in cfg.cond]
    if cfg.theta:
        if cfg.direction is None:
            raise UsageError("--theta needs --direction")
        d = parse_angle(cfg.direction)
        for t in cfg.theta:
            th = parse_angle(t)
            for shift in (Fraction(0), Fraction(1, 2)):
                if isinstance(d, PiMultiple) and isinstance(th, PiMultiple):
                    conds.append(cos_pi(d.pi_coefficient + shift - th.pi_coefficient,
                                        absolute=True))
                else:
                    ang = add(add(d, PiMultiple(shift)), negate(th))
                    conds.append(absolute(cos_of(ang)))
    if not conds:
        raise UsageError("at least one --cond (or --theta with --direction) is required")
    return conds


def _schedule(cfg):
    return Schedule.parse(cfg.schedule, cfg.theorem, cfg.bit_budget)


def build(cfg):
    """Run the construction of a config; returns ``(x, traces, inputs)``."""
    sched = _schedule(cfg)
    conds = conditions_of(cfg)
    A = RandomBits(cfg.oracle_seed)
    if cfg.theorem == 1:
        x, traces = build_thm1(A, conds, sched, cfg.stages, cfg.bit_budget)
        inputs = BuildInputs(1, sched, conds, cfg.stages, A=A)
    else:
        phi = RandomBits(cfg.effective_phi_seed())
        T = TargetSequence(Fraction(cfg.eps), cfg.seed)
        x, traces = build_thm2(A, phi, conds, T, sched, cfg.stages, cfg.bit_budget)
        inputs = BuildInputs(2, sched, conds, cfg.stages, A=A, phi=phi, T=T)
    return x, traces, inputs


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_reports(out, report, formats):
    if "json" in formats:
        (out / "audit.json").write_text(report.dumps() + "\n")
    if "csv" in formats:
        (out / "profiles.csv").write_text(report.profiles_csv())
    if "svg" in formats:
        series = {f"product {i}": [(n, float(r)) for n, r in p]
                  for i, p in sorted(report.density.items())}
        if report.target_density:
            series["target"] = [(n, float(r)) for n, r in report.target_density]
        (out / "density.svg").write_text(line_plot_svg(
            series, title="complexity density of product prefixes",
            xlabel="prefix length", ylabel="K-hat / n"))


def _summary(report, stream):
    for c in report.checks:
        tag = "ok  " if c.passed else "FAIL"
        kind = " (statistical)" if c.statistical else ""
        print(f"{tag} {c.name}{kind} {c.detail}".rstrip(), file=stream)
    print("audit: " + ("PASS" if report.passed else "FAIL"), file=stream)


def _cmd_construct(cfg):
    x, traces, inputs = build(cfg)
    report = verify_build(x, traces, inputs, density=cfg.density)
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "run.json").write_text(_dump(cfg.record()))
        (out / "x.txt").write_text(x.to_text() + "\n")
        (out / "trace.json").write_text(_dump({
            "schedule": inputs.sched.to_json(),
            "stages": [t.to_json() for t in traces]}))
        _write_reports(out, report, cfg.formats)
    print(f"built x of length {len(x)} ({cfg.command}, {cfg.schedule}, N={cfg.stages})")
    _summary(report, sys.stdout)
    return EXIT_OK if report.passed else EXIT_AUDIT


def _cmd_audit(cfg):
    src = Path(cfg.input or cfg.out or ".")
    try:
        rec = json.loads((src / "run.json").read_text())
        x = BitString.from_text((src / "x.txt").read_text())
    except FileNotFoundError as exc:
        raise UsageError(f"missing build artifact: {exc.filename}") from None
    built = RunConfig(command=rec["command"], schedule=rec["schedule"],
                      stages=rec["stages"], cond=rec["cond"], theta=rec["theta"],
                      direction=rec["direction"], eps=rec["eps"],
                      oracle_seed=rec["oracle_seed"], phi_seed=rec["phi_seed"],
                      seed=rec["seed"], bit_budget=rec["bit_budget"])
    # traces are regenerated from the recorded seeds; the supplied x is checked
    _, traces, inputs = build(built)
    report = verify_build(x, traces, inputs, density=cfg.density)
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        _write_reports(out, report, cfg.formats)
    _summary(report, sys.stdout)
    return EXIT_OK if report.passed else EXIT_AUDIT


def _geometry_point(p, s):
    (xs, ys), bound = cart_of_polar(p, s)
    box = exact_cartesian_box(p, s + 40)
    return {
        "x": str(xs), "y": str(ys), "s": s,
        "certified_bound": float(bound.to_fraction()),
        "certified_bound_scaled": float(bound.to_fraction() * (1 << s)),
        "within_stated_radius": stated_radius_contains((xs, ys), s, box),
    }


def _cmd_geometry(cfg):
    results = []
    if cfg.r is not None:
        p = PolarPoint(parse_real(cfg.r), parse_angle(cfg.angle or "0"))
        results.append(_geometry_point(p, cfg.s))
    rng = random.Random(cfg.seed)
    for _ in range(cfg.points):
        r = Fraction(rng.getrandbits(53), 1 << 53)
        th = PiMultiple(Fraction(rng.getrandbits(53), 1 << 54))
        s = rng.randint(8, 24)
        results.append(_geometry_point(PolarPoint(r, th), s))
    if not results:
        raise UsageError("geometry needs --r (and --angle) or --points")
    inside = sum(r["within_stated_radius"] for r in results)
    doc = {"seed": cfg.seed, "points": results, "within_stated_radius": inside,
           "total": len(results)}
    text = _dump(doc)
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "geometry.json").write_text(text)
    if cfg.points:
        print(f"{inside}/{len(results)} points inside the stated radius")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_gen_target(cfg):
    bits = TargetSequence(Fraction(cfg.eps), cfg.seed).bits(cfg.n)
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "target.txt").write_text(bits.to_text() + "\n")
    print(bits.to_text())
    return EXIT_OK


def run(cfg):
    """Execute a config and return the exit status."""
    handler = {
        "construct1": _cmd_construct, "construct2": _cmd_construct,
        "audit": _cmd_audit, "geometry": _cmd_geometry,
        "gen-target": _cmd_gen_target,
    }[cfg.command]
    try:
        return handler(cfg)
    except (UsageError, MarstrandError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parser():
    p = _Parser(prog="marstrand", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="TOML file with defaults (flags win)")
    p.add_argument("--schedule", help="paper (double-exponential) or scaled:B")
    p.add_argument("--stages", type=int, help="number of stages N")
    p.add_argument("--cond", action="append", help="multiplier spec (repeatable)")
    p.add_argument("--theta", action="append", help="line angle p/q pi (repeatable)")
    p.add_argument("--direction", help="projection direction p/q pi for --theta")
    p.add_argument("--eps", help="target density p/q")
    p.add_argument("--oracle-seed", type=int, help="seed of the folded oracle A")
    p.add_argument("--phi", dest="phi_seed", type=int,
                   help="seed of the second folded source (default oracle seed + 1)")
    p.add_argument("--seed", type=int, help="seed of the target sequence / geometry sample")
    p.add_argument("--n", type=int, help="length for gen-target")
    p.add_argument("--out", help="output directory")
    p.add_argument("--input", help="build directory to audit (default --out)")
    p.add_argument("--bit-budget", type=int, help="cap on nu(N)")
    p.add_argument("--format", dest="formats", action="append", choices=FORMATS,
                   help="audit report format (repeatable; default json)")
    p.add_argument("--no-density", dest="density", action="store_false", default=None,
                   help="skip the empirical density profiles")
    p.add_argument("--r", help="geometry: radius spec")
    p.add_argument("--angle", help="geometry: angle spec p/q pi")
    p.add_argument("--s", type=int, help="geometry: truncation precision")
    p.add_argument("--points", type=int, help="geometry: number of random points")
    return p


def _load_toml(path):
    try:
        with open(path, "rb") as fh:
            data = tomli.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    except tomli.TOMLDecodeError as exc:
        raise UsageError(f"bad config: {exc}") from None
    return {k.replace("-", "_"): v for k, v in data.items()}


def config_from_args(argv=None):
    ns = _parser().parse_args(argv)
    values = {}
    if ns.config:
        values.update(_load_toml(ns.config))
        if "format" in values:
            values["formats"] = values.pop("format")
        if "phi" in values:
            values["phi_seed"] = values.pop("phi")
    for k, v in vars(ns).items():
        if k in ("command", "config") or v is None:
            continue
        values[k] = v
    known = set(RunConfig.__dataclass_fields__)
    unknown = set(values) - known
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for k in ("cond", "theta", "formats"):
        if isinstance(values.get(k), str):
            values[k] = [values[k]]
    if "eps" in values:
        values["eps"] = str(values["eps"])
    cfg = RunConfig(command=ns.command, **values)
    if cfg.command == "construct2" and "schedule" not in values:
        cfg.schedule = "scaled:16"
    return cfg


def main(argv=None):
    try:
        cfg = config_from_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
