"""Command-line front end.

Subcommands mirror the library: `nm` for numerical monoids, `mp` for the
reciprocal monoid, `realize` for staged realizations, `accp` for
certificates and witnesses, `algebra` for the monoid-algebra bridge.
Every artifact embeds the effective configuration so a run can be
reproduced byte for byte.  Exit codes: 0 success, 2 domain errors
(including rejected certificates), 3 search budget exhaustion, 64 usage
errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import accp as accp_mod
from . import algebra as algebra_mod
from .errors import BudgetExhausted, DomainViolation
from .numerical import DEFAULT_SEARCH_BUDGET, NumericalMonoid
from .puiseux import (
    CanonicalDecomposition,
    FgPuiseux,
    PrimeReciprocal,
    mp_decompose,
    mp_length_set,
    symbolic_enumerate,
)
from .rationals import PrimeStream, rational, rational_str
from .realize import ConstructionTrace, realize_length_set

CONFIG_ENV = "LENGTHSETS_CONFIG"


@dataclass
class Config:
    prime_bound: int = 13
    cap: int = 64
    budget: int = DEFAULT_SEARCH_BUDGET
    format: str = "json"
    seed: int | None = None

    def echo(self) -> dict:
        return {
            "prime_bound": self.prime_bound,
            "cap": self.cap,
            "budget": self.budget,
            "format": self.format,
            "seed": self.seed,
        }


class _Parser(argparse.ArgumentParser):
    # usage problems exit 64, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(64)


def _global_options(parser, suppress: bool) -> None:
    # on leaf parsers the default is SUPPRESS so an absent flag does not
    # overwrite a value given before the subcommand
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--prime-bound", type=int, default=d, dest="prime_bound",
                        help="prime truncation bound for reciprocal-monoid displays")
    parser.add_argument("--cap", type=int, default=d, help="length cap for symbolic enumeration")
    parser.add_argument("--budget", type=int, default=d, help="node budget for realization search")
    parser.add_argument("--format", choices=("json", "table"), default=d, help="output format")
    parser.add_argument("--seed", type=int, default=d, help="seed recorded in artifacts")


def _build_parser() -> _Parser:
    p = _Parser(prog="lengthsets", description=__doc__)
    _global_options(p, suppress=False)
    gp = argparse.ArgumentParser(add_help=False)
    _global_options(gp, suppress=True)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    nm = sub.add_parser("nm", help="numerical monoid queries").add_subparsers(dest="sub", parser_class=_Parser)
    nm_l = nm.add_parser("lengths", help="length set of an element", parents=[gp])
    nm_l.add_argument("--gens", required=True, help="comma-separated generators")
    nm_l.add_argument("--elem", required=True, type=int)
    nm_f = nm.add_parser("frobenius", help="largest gap of the monoid", parents=[gp])
    nm_f.add_argument("--gens", required=True)

    mp = sub.add_parser("mp", help="reciprocal monoid queries").add_subparsers(dest="sub", parser_class=_Parser)
    mp_d = mp.add_parser("decompose", help="canonical decomposition of a rational", parents=[gp])
    mp_d.add_argument("--q", required=True)
    mp_l = mp.add_parser("lengths", help="symbolic length set of a member", parents=[gp])
    mp_l.add_argument("--q", required=True)

    re = sub.add_parser("realize", help="realize a length set, optionally with a staged tail", parents=[gp])
    re.add_argument("--set", required=True, dest="target", help="comma-separated finite part")
    re.add_argument("--tail", default=None, help="comma-separated ascending stage targets")
    re.add_argument("--depth", type=int, default=None)
    re.add_argument("--emit", default=None, help="write the trace JSON here")

    ac = sub.add_parser("accp", help="certificates, probes, witnesses").add_subparsers(dest="sub", parser_class=_Parser)
    ac_c = ac.add_parser("check", help="audit a certificate or trace file", parents=[gp])
    ac_c.add_argument("--cert", required=True)
    ac_e = ac.add_parser("example34", help="witness query for the threshold-plus-reciprocals monoid", parents=[gp])
    ac_e.add_argument("--q", required=True)

    al = sub.add_parser("algebra", help="monoid-algebra bridge").add_subparsers(dest="sub", parser_class=_Parser)
    al_l = al.add_parser("lengths", help="length set of a monomial exponent", parents=[gp])
    al_l.add_argument("--monoid", required=True, help="trace or monoid JSON file")
    al_l.add_argument("--exp", required=True)

    return p


def _load_config(args) -> Config:
    cfg = Config()
    path = os.environ.get(CONFIG_ENV)
    if path:
        with open(path) as fh:
            data = json.load(fh)
        for key in ("prime_bound", "cap", "budget", "format", "seed"):
            if key in data:
                setattr(cfg, key, data[key])
    for key in ("prime_bound", "cap", "budget", "format", "seed"):
        flag = getattr(args, key, None)
        if flag is not None:
            setattr(cfg, key, flag)
    if cfg.prime_bound < 2 or cfg.cap < 1 or cfg.budget < 1:
        raise DomainViolation("config bounds must be positive")
    if cfg.format not in ("json", "table"):
        raise DomainViolation(f"unknown output format {cfg.format!r}")
    return cfg


def _render(doc: dict, cfg: Config) -> str:
    if cfg.format == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    lines = []
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise DomainViolation(f"{what} must be a comma-separated integer list") from None


def _load_monoid_file(path: str):
    with open(path) as fh:
        data = json.load(fh)
    if "atoms_per_stage" in data:
        return ConstructionTrace.from_json(data).final_monoid()
    if "stream" in data and "atoms" not in data:
        return PrimeReciprocal(PrimeStream.from_label(data["stream"]))
    if "atoms" in data:
        atoms = data["atoms"]
        if all(isinstance(a, int) for a in atoms):
            return NumericalMonoid(tuple(atoms))
        return FgPuiseux(tuple(rational(a) for a in atoms))
    raise DomainViolation(f"{path} holds neither a trace nor a monoid")


def _cmd_nm(args, cfg: Config) -> tuple[dict, int]:
    gens = _parse_int_list(args.gens, "--gens")
    monoid = NumericalMonoid.from_generators(gens)
    if args.sub == "lengths":
        ls = monoid.length_set(args.elem)
        return {
            "command": "nm lengths",
            "config": cfg.echo(),
            "monoid": monoid.to_json(),
            "elem": args.elem,
            "lengths": sorted(ls),
        }, 0
    ls = monoid.frobenius()
    return {
        "command": "nm frobenius",
        "config": cfg.echo(),
        "monoid": monoid.to_json(),
        "frobenius": ls,
    }, 0


def _cmd_mp(args, cfg: Config) -> tuple[dict, int]:
    Mp = PrimeReciprocal(PrimeStream.primes())
    q = rational(args.q)
    if args.sub == "decompose":
        dec = mp_decompose(Mp, q)
        doc = {
            "command": "mp decompose",
            "config": cfg.echo(),
            "q": rational_str(q),
            "member": isinstance(dec, CanonicalDecomposition),
        }
        if isinstance(dec, CanonicalDecomposition):
            doc["decomposition"] = dec.to_json()
        else:
            doc["witness"] = dec.to_json()
        return doc, 0
    cap = cfg.cap
    sym = mp_length_set(Mp, q)  # non-members raise a domain error
    return {
        "command": "mp lengths",
        "config": cfg.echo(),
        "q": rational_str(q),
        "cap": cap,
        "symbolic": sym.to_json(),
        "lengths": list(symbolic_enumerate(sym, cap)),
    }, 0


def _cmd_realize(args, cfg: Config) -> tuple[dict, int]:
    target = _parse_int_list(args.target, "--set")
    tail = _parse_int_list(args.tail, "--tail") if args.tail else ()
    trace = realize_length_set(
        target, tail=tail, depth=args.depth, budget=cfg.budget, config=cfg.echo()
    )
    doc = trace.to_json()
    if args.emit:
        with open(args.emit, "w") as fh:
            fh.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return doc, 0


def _cmd_accp(args, cfg: Config) -> tuple[dict, int]:
    if args.sub == "check":
        with open(args.cert) as fh:
            data = json.load(fh)
        if "certificate" in data:
            data = data["certificate"]
        cert = accp_mod.certificate_from_json(data)
        res = accp_mod.check_certificate(cert)
        doc = {
            "command": "accp check",
            "config": cfg.echo(),
            "verified": res.ok,
            "report": [
                {"rule": r.rule, "ok": r.ok, "conditions": list(r.conditions)}
                for r in res.report
            ],
        }
        if not res.ok:
            doc["reason"] = res.reason
            return doc, 2  # a rejected certificate is a domain-level failure
        return doc, 0
    q = rational(args.q)
    wit = accp_mod.non_atomic_witness(q, cap=cfg.cap)
    doc = {
        "command": "accp example34",
        "config": cfg.echo(),
        "q": rational_str(q),
        "factorable": isinstance(wit, accp_mod.Factored),
    }
    if isinstance(wit, accp_mod.Factored):
        doc["factorization"] = wit.factorization.to_json()
        doc["length"] = wit.factorization.length
    else:
        doc["in_monoid"] = wit.in_monoid
        doc["obstruction"] = wit.obstruction
    return doc, 0


def _cmd_algebra(args, cfg: Config) -> tuple[dict, int]:
    monoid = _load_monoid_file(args.monoid)
    exp = rational(args.exp)
    ls = algebra_mod.monomial_length_set(exp, monoid)
    doc = {
        "command": "algebra lengths",
        "config": cfg.echo(),
        "monoid": args.monoid,
        "exp": rational_str(exp),
    }
    if isinstance(ls, frozenset):
        doc["lengths"] = sorted(ls)
    else:
        doc["symbolic"] = ls.to_json()
        doc["lengths"] = list(symbolic_enumerate(ls, cfg.cap))
    return doc, 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return 64
    if args.command in ("nm", "mp", "accp", "algebra") and not getattr(args, "sub", None):
        parser.print_usage(sys.stderr)
        return 64
    try:
        cfg = _load_config(args)
        if args.command == "nm":
            doc, code = _cmd_nm(args, cfg)
        elif args.command == "mp":
            doc, code = _cmd_mp(args, cfg)
        elif args.command == "realize":
            doc, code = _cmd_realize(args, cfg)
        elif args.command == "accp":
            doc, code = _cmd_accp(args, cfg)
        else:
            doc, code = _cmd_algebra(args, cfg)
    except BudgetExhausted as e:
        sys.stderr.write(
            json.dumps(
                {"error": "budget-exhausted", "detail": str(e), "frontier": e.frontier},
                sort_keys=True,
            )
            + "\n"
        )
        return 3
    except DomainViolation as e:
        sys.stderr.write(json.dumps({"error": "domain", "detail": str(e)}, sort_keys=True) + "\n")
        return 2
    except (OSError, json.JSONDecodeError) as e:
        sys.stderr.write(json.dumps({"error": "io", "detail": str(e)}, sort_keys=True) + "\n")
        return 2
    sys.stdout.write(_render(doc, cfg))
    return code


if __name__ == "__main__":
    sys.exit(main())
