"""Command-line front end.

Input files declare a ring and named ideals:

    # comments run to end of line
    ring x, y;
    coefficients integer;      # or: rational, modp <p>   (default integer)
    ordering dp;               # or: lex                  (default dp)
    ideal I = 9, 3*x, 3*y;

Commands: decompose, gb, sat, intersect, quotient, verify.  Exit codes:
0 success, 1 verification failure, 2 usage or parse errors (including the
unit ideal as decomposition input).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .gb import GBasis
from .ideals import Ideal, equals, intersect, quotient, quotient_ideal, saturate
from .poly import GF, Ordering, Poly, QQ, Ring, ZZ, dp, lex, render
from .zdec import Component, Decomposition, primdec_z, verify as verify_dec


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass
class IdealFile:
    ring: Ring
    order: Ordering
    order_name: str
    ideals: dict


# ---------------------------------------------------------------------------
# tokenizer / parser
# ---------------------------------------------------------------------------

_PUNCT = set("+-*/^(),;=")


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append((ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, what=None):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {what or kind}, found {tok[1]!r}", tok[2], tok[3])
        return tok

    def error(self, message):
        tok = self.peek()
        raise ParseError(message, tok[2], tok[3])


def parse(text: str) -> IdealFile:
    """Parse an ideal-description file into a ring and named ideals."""
    p = _Parser(text)
    var_names: list[str] = []
    domain = ZZ
    order_name = "dp"
    raw_ideals: list[tuple[str, list]] = []
    while p.peek()[0] != "eof":
        tok = p.expect("name", "a statement keyword")
        kw = tok[1]
        if kw == "ring":
            if var_names:
                raise ParseError("duplicate ring declaration", tok[2], tok[3])
            var_names.append(p.expect("name", "a variable name")[1])
            while p.peek()[0] == ",":
                p.next()
                var_names.append(p.expect("name", "a variable name")[1])
            p.expect(";")
        elif kw == "coefficients":
            dom_tok = p.expect("name", "a coefficient domain")
            if dom_tok[1] == "integer":
                domain = ZZ
            elif dom_tok[1] == "rational":
                domain = QQ
            elif dom_tok[1] == "modp":
                p_tok = p.expect("int", "a prime modulus")
                try:
                    domain = GF(int(p_tok[1]))
                except ValueError as e:
                    raise ParseError(str(e), p_tok[2], p_tok[3])
            else:
                raise ParseError(
                    f"unknown coefficient domain {dom_tok[1]!r}", dom_tok[2], dom_tok[3]
                )
            p.expect(";")
        elif kw == "ordering":
            o_tok = p.expect("name", "an ordering name")
            if o_tok[1] not in ("dp", "lex"):
                raise ParseError(f"unknown ordering {o_tok[1]!r}", o_tok[2], o_tok[3])
            order_name = o_tok[1]
            p.expect(";")
        elif kw == "ideal":
            name = p.expect("name", "an ideal name")[1]
            p.expect("=")
            if p.peek()[0] == ";":
                p.error("empty generator list")
            exprs = [_parse_expr(p)]
            while p.peek()[0] == ",":
                p.next()
                if p.peek()[0] in (";", "eof"):
                    p.error("trailing comma in generator list")
                exprs.append(_parse_expr(p))
            p.expect(";")
            raw_ideals.append((name, exprs))
        else:
            raise ParseError(f"unknown statement {kw!r}", tok[2], tok[3])
    if not var_names:
        raise ParseError("missing ring declaration", 1, 1)
    ring = Ring(domain, tuple(var_names))
    order = dp(ring.n) if order_name == "dp" else lex(ring.n)
    ideals = {}
    for name, exprs in raw_ideals:
        gens = [_build(e, ring) for e in exprs]
        ideals[name] = Ideal(ring, gens)
    return IdealFile(ring, order, order_name, ideals)


# Expressions are parsed to a small AST of ('num', Fraction) / ('var', name)
# / ('+', a, b) / ('-', a, b) / ('*', a, b) / ('^', a, int) / ('neg', a),
# then built into a Poly once the ring is known.


def _parse_expr(p: _Parser):
    node = _parse_term(p)
    while p.peek()[0] in ("+", "-"):
        op = p.next()[0]
        rhs = _parse_term(p)
        node = (op, node, rhs)
    return node


def _parse_term(p: _Parser):
    node = _parse_factor(p)
    while True:
        tok = p.peek()
        if tok[0] == "*":
            p.next()
            node = ("*", node, _parse_factor(p))
        elif tok[0] == "/":
            p.next()
            node = ("/", node, _parse_factor(p))
        elif tok[0] in ("name", "int", "("):
            # implicit multiplication: 3x, 2(x+1), x y
            node = ("*", node, _parse_factor(p))
        else:
            return node


def _parse_factor(p: _Parser):
    tok = p.peek()
    if tok[0] == "-":
        p.next()
        return ("neg", _parse_factor(p))
    if tok[0] == "+":
        p.next()
        return _parse_factor(p)
    node = _parse_atom(p)
    if p.peek()[0] == "^":
        p.next()
        e_tok = p.expect("int", "an integer exponent")
        return ("^", node, int(e_tok[1]))
    return node


def _parse_atom(p: _Parser):
    tok = p.next()
    if tok[0] == "int":
        return ("num", Fraction(int(tok[1])))
    if tok[0] == "name":
        return ("var", tok[1], tok[2], tok[3])
    if tok[0] == "(":
        node = _parse_expr(p)
        p.expect(")")
        return node
    raise ParseError(f"expected a polynomial, found {tok[1]!r}", tok[2], tok[3])


def _build(node, ring: Ring) -> Poly:
    kind = node[0]
    if kind == "num":
        value = node[1]
        if ring.domain.name == "ZZ" and value.denominator != 1:
            raise ParseError(f"non-integer coefficient {value} in integer ring", 0, 0)
        if ring.domain.char:
            if value.denominator % ring.domain.char == 0:
                raise ParseError(f"denominator of {value} vanishes mod p", 0, 0)
            return ring.const(value.numerator * pow(value.denominator, -1, ring.domain.char))
        c = value if ring.domain.name == "QQ" else value.numerator
        return ring.const(c)
    if kind == "var":
        name = node[1]
        if name not in ring.vars:
            raise ParseError(f"unknown variable {name!r}", node[2], node[3])
        return ring.var(ring.vars.index(name))
    if kind == "+":
        return _build(node[1], ring) + _build(node[2], ring)
    if kind == "-":
        return _build(node[1], ring) - _build(node[2], ring)
    if kind == "neg":
        return -_build(node[1], ring)
    if kind == "*":
        return _build(node[1], ring) * _build(node[2], ring)
    if kind == "/":
        num = _build(node[1], ring)
        den = node[2]
        if den[0] != "num":
            raise ParseError("division is only supported by integer constants", 0, 0)
        return _build(("num", Fraction(1) / den[1]), ring) * num
    if kind == "^":
        return _build(node[1], ring) ** node[2]
    raise AssertionError(f"unknown node {kind}")


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse a single polynomial expression in the given ring."""
    p = _Parser(text)
    node = _parse_expr(p)
    if p.peek()[0] != "eof":
        p.error("trailing input after polynomial")
    return _build(node, ring)


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _ideal_strings(I: Ideal, order) -> list[str]:
    els = I.gb(order).elements if I.gens else ()
    return [render(g, order) for g in els] or ["0"]


def _decomposition_payload(D: Decomposition, order, include_input=True) -> dict:
    comps = []
    for c in D.components:
        prov = {
            "branch": c.provenance.branch,
            "prime": c.provenance.prime,
            "nu": c.provenance.nu,
            "task": c.provenance.task,
            "seed": c.provenance.seed,
        }
        if c.provenance.separator is not None:
            prov["separator"] = c.provenance.separator
        if c.provenance.multiplier is not None:
            prov["multiplier"] = c.provenance.multiplier
        if c.provenance.sat_exponent is not None:
            prov["sat_exponent"] = c.provenance.sat_exponent
        comps.append(
            {
                "primary": _ideal_strings(c.primary, order),
                "prime": _ideal_strings(c.prime, order),
                "provenance": prov,
            }
        )
    stats = {
        "primes": D.stats.get("primes", []),
        "remainder_exponents": D.stats.get("remainder_exponents", []),
        "rational_h": D.stats.get("rational_h", []),
        "components": len(D.components),
    }
    out = {"components": comps, "verified": D.verified, "stats": stats}
    if include_input:
        out["input"] = [render(g, order) for g in D.input.gens]
    return out


def _print_decomposition(D: Decomposition, order, trace: bool):
    for i, c in enumerate(D.components):
        print(f"component {i}:")
        print("  primary: " + ", ".join(_ideal_strings(c.primary, order)))
        print("  prime:   " + ", ".join(_ideal_strings(c.prime, order)))
        if trace:
            p = c.provenance
            bits = [f"branch={p.branch}"]
            if p.prime is not None:
                bits.append(f"p={p.prime}^{p.nu}")
            if p.separator is not None:
                bits.append(f"s={p.separator}")
            if p.multiplier is not None:
                bits.append(f"h={p.multiplier}")
            if p.sat_exponent is not None:
                bits.append(f"m={p.sat_exponent}")
            bits.append(f"seed={p.seed}")
            print("  trace:   " + " ".join(bits))
    if trace:
        print(f"stats: {D.stats}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _pick_ideal(f: IdealFile, name: str | None) -> Ideal:
    if not f.ideals:
        raise ParseError("no ideal declared in the input file", 0, 0)
    if name is None:
        return next(iter(f.ideals.values()))
    if name not in f.ideals:
        raise ParseError(f"no ideal named {name!r} in the input file", 0, 0)
    return f.ideals[name]


def _cmd_decompose(args, f: IdealFile) -> int:
    I = _pick_ideal(f, args.ideal)
    if f.ring.domain.name != "ZZ":
        print("decompose requires integer coefficients", file=sys.stderr)
        return 2
    if I.is_unit():
        print("unit ideal", file=sys.stderr)
        return 2
    D = primdec_z(I, jobs=args.jobs, seed=args.seed)
    code = 0
    rep = None
    if args.verify:
        rep = verify_dec(D)
        D.verified = rep.ok
        if not rep.ok:
            code = 1
    if args.json:
        print(json.dumps(_decomposition_payload(D, f.order), indent=2, sort_keys=True))
    else:
        _print_decomposition(D, f.order, args.trace)
        if rep is not None:
            print("verified" if rep.ok else "VERIFICATION FAILED")
            for line in rep.failures:
                print("  failure: " + line)
            for line in rep.warnings:
                print("  warning: " + line)
    return code


def _cmd_gb(args, f: IdealFile) -> int:
    I = _pick_ideal(f, args.ideal)
    basis = I.gb(f.order)
    for g in basis.elements:
        print(render(g, f.order))
    if not basis.elements:
        print("0")
    return 0


def _cmd_sat(args, f: IdealFile) -> int:
    I = _pick_ideal(f, args.ideal)
    h = parse_poly(args.poly, f.ring)
    S, m = saturate(I, h)
    for g in _ideal_strings(S, f.order):
        print(g)
    print(f"# exponent m = {m}")
    return 0


def _cmd_intersect(args, f: IdealFile) -> int:
    A = _pick_ideal(f, args.first)
    B = _pick_ideal(f, args.second)
    for g in _ideal_strings(intersect(A, B), f.order):
        print(g)
    return 0


def _cmd_quotient(args, f: IdealFile) -> int:
    I = _pick_ideal(f, args.ideal)
    if args.by in f.ideals:
        Q = quotient_ideal(I, f.ideals[args.by])
    else:
        Q = quotient(I, parse_poly(args.by, f.ring))
    for g in _ideal_strings(Q, f.order):
        print(g)
    return 0


def _cmd_verify(args, f: IdealFile) -> int:
    I = _pick_ideal(f, args.ideal)
    if I.is_unit():
        print("unit ideal", file=sys.stderr)
        return 2
    D = primdec_z(I, jobs=args.jobs, seed=args.seed)
    rep = verify_dec(D)
    D.verified = rep.ok
    if args.json:
        payload = _decomposition_payload(D, f.order)
        payload["report"] = {
            "failures": rep.failures,
            "warnings": rep.warnings,
            "notes": rep.notes,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _print_decomposition(D, f.order, args.trace)
        print("verified" if rep.ok else "VERIFICATION FAILED")
        for line in rep.failures:
            print("  failure: " + line)
    return 0 if rep.ok else 1


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zprimdec",
        description="Primary decomposition of ideals in ZZ[x1..xn].",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, ideal_arg=True):
        sp.add_argument("file", help="ideal description file")
        if ideal_arg:
            sp.add_argument("ideal", nargs="?", default=None, help="ideal name (default: first)")
        sp.add_argument("-j", "--jobs", type=int,
                        default=int(os.environ.get("ZPRIMDEC_JOBS", "1")),
                        help="number of concurrent per-prime workers")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized subroutines")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--trace", action="store_true",
                        help="show separators, multipliers and exponents")

    sp = sub.add_parser("decompose", help="irredundant primary decomposition")
    common(sp)
    sp.add_argument("--verify", action="store_true", help="check the output before reporting")
    sp.set_defaults(fn=_cmd_decompose)

    sp = sub.add_parser("gb", help="(strong) Groebner basis of an ideal")
    common(sp)
    sp.set_defaults(fn=_cmd_gb)

    sp = sub.add_parser("sat", help="saturation of an ideal by a polynomial")
    sp.add_argument("file")
    sp.add_argument("ideal")
    sp.add_argument("poly", help="polynomial expression")
    sp.add_argument("-j", "--jobs", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--trace", action="store_true")
    sp.set_defaults(fn=_cmd_sat)

    sp = sub.add_parser("intersect", help="intersection of two ideals")
    sp.add_argument("file")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_intersect)

    sp = sub.add_parser("quotient", help="ideal quotient by a polynomial or ideal")
    sp.add_argument("file")
    sp.add_argument("ideal")
    sp.add_argument("by", help="polynomial expression or ideal name")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_quotient)

    sp = sub.add_parser("verify", help="decompose and verify; exit 1 on failure")
    common(sp)
    sp.set_defaults(fn=_cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_arg_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"cannot read {args.file}: {e}", file=sys.stderr)
        return 2
    try:
        f = parse(text)
        return args.fn(args, f)
    except ParseError as e:
        print(f"{args.file}:{e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(str(e), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
