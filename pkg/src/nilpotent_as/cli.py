"""Command line: build a presentation mod C3 and optionally run verification suites.

Exit status 0 on success, 1 when a verification check fails or the
computation hits a window or consistency error, 2 on a usage error.
"""

import argparse
import json
import sys

from .base import FieldError, get_field, lex_sign
from .presentation import PresentationError, char0_presentation, char0_setup, emit, relations_mod_C3
from .series import Omega, WindowError
from .solver import ConsistencyError, GeneratorWindow, Setup


class UsageError(ValueError):
    pass


def _ints(text):
    try:
        return tuple(int(v) for v in str(text).split(","))
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}")


def parse_beta(text, F):
    """ "i1,i2:coeff;..." with coeff an integer or comma-free coordinates "c0 c1"."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(";"))):
        if ":" not in item:
            raise UsageError(f"bad --beta entry {item!r}")
        iota, coeff = item.split(":", 1)
        parts = coeff.split()
        try:
            value = F.from_coords([int(v) for v in parts]) if len(parts) > 1 else int(coeff) % F.q
        except ValueError:
            raise UsageError(f"bad coefficient {coeff!r}")
        out[_ints(iota)] = value
    return out


def parse_window(text):
    """ "S" or "S:B": weight bound and box."""
    if text is None:
        return None
    s, _, b = str(text).partition(":")
    try:
        return int(s), (int(b) if b else None)
    except ValueError:
        raise UsageError(f"bad --window {text!r}, expected S or S:B")


def preset_q_p_zeta():
    return {"mode": "char_0", "p": 5, "N": 2, "N0": 1, "cbar2": "1,0", "beta": "0,0:1", "format": "json",
            "form": "group"}


def preset_simplest():
    return {"mode": "char_p", "p": 5, "N": 2, "N0": 1, "cbar0": "5,0", "beta": "0,0:1"}


PRESETS = {"q_p-zeta-x": preset_q_p_zeta, "simplest-char-p": preset_simplest}

DEFAULTS = {"mode": "char_p", "p": 5, "N": 2, "N0": 1, "class": 2, "format": "text", "form": "lie",
            "beta": "0,0:1", "seed": 0}


def make_parser():
    ap = argparse.ArgumentParser(prog="nilpotent-as", description=__doc__.splitlines()[0])
    ap.add_argument("--preset", choices=sorted(PRESETS))
    ap.add_argument("--config", help="JSON file with the same keys as the long flags")
    ap.add_argument("--p", type=int)
    ap.add_argument("--N", type=int)
    ap.add_argument("--N0", type=int)
    ap.add_argument("--mode", choices=["char_p", "char_0"])
    ap.add_argument("--cbar0", help="a,b,... (char_p; in p Z^N)")
    ap.add_argument("--cbar2", help="a,b,... (char_0; cbar0 = p * cbar2)")
    ap.add_argument("--beta", help='"i1,i2:coeff;..." A-coefficients (char_p) or beta (char_0)')
    ap.add_argument("--class", dest="class_", type=int, metavar="C", help="class bound used by the verification suites")
    ap.add_argument("--window", help="S[:B] generator weight bound and box")
    ap.add_argument("--form", choices=["lie", "group"])
    ap.add_argument("--format", choices=["text", "json", "latex"])
    ap.add_argument("--out", help="output path (default stdout)")
    ap.add_argument("--verify", help="comma separated suites, or 'all'")
    ap.add_argument("--seed", type=int)
    return ap


def resolve(args):
    """Merge defaults, preset, config file and flags (flags win)."""
    cfg = dict(DEFAULTS)
    if args.preset:
        cfg.update(PRESETS[args.preset]())
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config: {exc}")
        cfg.update({k.replace("-", "_") if k != "class" else k: v for k, v in data.items()})
    for key in ("p", "N", "N0", "mode", "cbar0", "cbar2", "beta", "window", "form", "format", "out", "verify",
                "seed"):
        v = getattr(args, key)
        if v is not None:
            cfg[key] = v
    if args.class_ is not None:
        cfg["class"] = args.class_
    return cfg


def build(cfg):
    """The presentation described by a resolved configuration."""
    p, N, N0 = int(cfg["p"]), int(cfg["N"]), int(cfg["N0"])
    try:
        F = get_field(p, N0)
    except FieldError as exc:
        raise UsageError(str(exc))
    cls = int(cfg.get("class", 2))
    if not 2 <= cls <= min(4, p - 1):
        raise UsageError(f"class must be in 2..{min(4, p - 1)}")
    beta = parse_beta(cfg.get("beta", ""), F)
    if any(len(i) != N for i in beta):
        raise UsageError("every beta index needs N components")
    if any(lex_sign(i) < 0 for i in beta):
        raise UsageError("beta indices must be lex-nonnegative")
    if not beta.get((0,) * N):
        raise UsageError("beta at iota = 0 must be nonzero")
    win = parse_window(cfg.get("window"))
    if cfg["mode"] == "char_0":
        cbar2 = _ints(cfg["cbar2"]) if cfg.get("cbar2") else (1,) + (0,) * (N - 1)
        cbar0 = tuple(p * v for v in cbar2)
    else:
        cbar0 = _ints(cfg["cbar0"]) if cfg.get("cbar0") else (p,) + (0,) * (N - 1)
        if any(v % p for v in cbar0) or cbar0[0] <= 0:
            raise UsageError("cbar0 must lie in p Z^N with positive first component")
        cbar2 = tuple(v // p for v in cbar0)
    if len(cbar0) != N:
        raise UsageError("cbar needs N components")
    window = None
    if win is not None:
        s, box = win
        if s < 2:
            raise UsageError("window weight bound must be at least 2")
        if N > 1 and box is None:
            box = p
        window = GeneratorWindow(p, cbar0, s, box)
    elif N > 1:
        window = GeneratorWindow(p, cbar0, 2, p)
    form = cfg.get("form", "lie")
    if cfg["mode"] == "char_0":
        try:
            setup = char0_setup(p, N, N0, cbar2, beta, 2, window)
            return char0_presentation(setup, form, cls)
        except PresentationError as exc:
            raise UsageError(str(exc))
    if form != "lie":
        raise UsageError("group form is only produced in char_0 mode")
    setup = Setup(Omega(F, cbar2, beta, kind="A"), 2, window)
    return relations_mod_C3(setup, cls)


def run_verify(names, seed, stream):
    from .checks import SUITES, run_suite
    if names.strip() == "all":
        names = ",".join(SUITES)
    failed = 0
    for name in filter(None, (s.strip() for s in names.split(","))):
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        for check in run_suite(name, seed):
            status = "PASS" if check.passed else "FAIL"
            failed += not check.passed
            stream.write(f"{status} {check.name}" + (f"  [{check.detail}]" if check.detail and not check.passed
                                                     else "") + "\n")
    return failed


def main(argv=None):
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        cfg = resolve(args)
        pres = build(cfg)
        text = emit(pres, cfg["format"])
        if cfg.get("out"):
            with open(cfg["out"], "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        if cfg.get("verify"):
            if run_verify(cfg["verify"], int(cfg.get("seed", 0)), sys.stderr if not cfg.get("out") else sys.stdout):
                return 1
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        sys.stderr.write(f"nilpotent-as: error: {exc}\n")
        return 2
    except (WindowError, ConsistencyError, PresentationError) as exc:
        sys.stderr.write(f"nilpotent-as: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
