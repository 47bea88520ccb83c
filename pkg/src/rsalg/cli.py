"""Command-line front end.

Expressions use ``x1 .. xn``, rationals ``p/q``, the unit ``1``, ``+``,
``-``, ``*`` and parentheses.  Unparenthesised products associate to the
left, so ``x1*x1*x2`` is ``((x1*x1)*x2)``.  Output is always fully
parenthesised.

Exit status: 0 when a result (including a negative verdict) was computed,
1 for parse or precondition errors, 2 when a resource limit was hit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import config
from .automorph import NotAnAutomorphism, tame_decompose
from .element import Element, LeadingTerm
from .errors import ParseError, PreconditionError, ResourceLimitError
from .ideal import BasisCache, build_leading_basis, freiheitssatz_report, is_member
from .subalgebra import (
    Outcome,
    centralizer_check,
    one_generated_membership,
    reduce_pair,
    two_generated_membership,
)
from .words import Word, enumerate_good

__all__ = ["parse_expression", "run_command", "main"]

_TOKENS = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|x(?P<var>\d+)|(?P<op>[-+*()]))"
)


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKENS.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Element:
        if not self.tokens:
            raise ParseError("empty expression", 0)
        e = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected {val!r}", pos)
        return e

    def expr(self) -> Element:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = sign * self.product()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                term = self.product()
                acc = acc + term if val == "+" else acc - term
            else:
                return acc

    def product(self) -> Element:
        acc = self.atom()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.atom()
            else:
                return acc

    def atom(self) -> Element:
        kind, val, pos = self.take()
        if kind == "num":
            try:
                return Element.constant(Fraction(val), self.n)
            except ZeroDivisionError:
                raise ParseError("zero denominator", pos) from None
        if kind == "var":
            i = int(val)
            if not 1 <= i <= self.n:
                raise ParseError(f"variable x{i} outside alphabet of size {self.n}", pos)
            return Element.var(i, self.n)
        if kind == "op" and val == "(":
            inner = self.expr()
            k2, v2, p2 = self.take()
            if k2 != "op" or v2 != ")":
                raise ParseError("expected ')'", p2)
            return inner
        if kind is None:
            raise ParseError("unexpected end of expression", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse_expression(text: str, n: int) -> Element:
    """Parse and normalise an expression over x1..xn."""
    return _Parser(text, n).parse()


def _max_var(texts) -> int:
    found = [int(m) for t in texts for m in re.findall(r"x(\d+)", t)]
    return max(found, default=1)


# -- output -----------------------------------------------------------------

def _to_json(v):
    if isinstance(v, Element):
        return v.to_json()
    if isinstance(v, (Word, Fraction)):
        return str(v)
    if isinstance(v, dict):
        return {k: _to_json(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_to_json(x) for x in v]
    return v


def _text_value(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _to_text(v, indent=0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(v, dict):
        for k, x in v.items():
            if isinstance(x, (dict, list, tuple)):
                lines.append(f"{pad}{k}:")
                lines.extend(_to_text(x, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_text_value(x)}")
    elif isinstance(v, (list, tuple)):
        if not v:
            lines.append(f"{pad}(none)")
        for k, x in enumerate(v):
            if isinstance(x, (dict, list, tuple)):
                lines.append(f"{pad}[{k}]")
                lines.extend(_to_text(x, indent + 1))
            else:
                lines.append(f"{pad}[{k}] {_text_value(x)}")
    else:
        lines.append(pad + _text_value(v))
    return lines


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_to_json(payload), indent=2)
    if len(payload) == 1:
        (only,) = payload.values()
        if not isinstance(only, (dict, list, tuple)):
            return _text_value(only)
    return "\n".join(_to_text(payload))


# -- commands ---------------------------------------------------------------

def _leading_payload(lt: LeadingTerm | None):
    if lt is None:
        return {"word": None, "coeff": None}
    return {"word": lt.word, "coeff": lt.coeff}


def _certificate_payload(cert):
    rows = cert.basis.rows if cert.basis is not None else ()
    return {
        "verdict": cert.verdict,
        "combination": [{"coeff": c, "row": rows[i]} for c, i in cert.combination],
        "remainder": cert.remainder,
    }


def _steps_payload(steps):
    return [{"which": s.which, "s": s.s, "coeff": s.coeff} for s in steps]


def _cmd_normalize(a, ctx):
    return {"result": ctx.expr(a.expr)}


def _cmd_mul(a, ctx):
    x, y = ctx.expr(a.a), ctx.expr(a.b)
    ctx.check_degree(x.degree + y.degree)
    return {"result": x * y}


def _cmd_leading(a, ctx):
    return _leading_payload(ctx.expr(a.expr).leading())


def _cmd_member(a, ctx):
    h, f = ctx.expr(a.h), ctx.expr(a.f)
    cache = BasisCache(a.cache_dir) if a.cache_dir else None
    cert = is_member(h, f, degree_bound=a.degree_bound, cap=ctx.limit, cache=cache)
    return _certificate_payload(cert)


def _cmd_freiheit(a, ctx):
    f, h = ctx.expr(a.f), ctx.expr(a.h)
    rep = freiheitssatz_report(f, h, shortcut=not a.no_shortcut, cap=ctx.limit)
    out = {"verdict": rep.verdict, "method": "rho_w" if rep.shortcut else "elimination"}
    if rep.shortcut:
        out["inflating_word"] = rep.inflating_word
        out["inflated_leading_degree"] = rep.inflated_degree
    else:
        out["certificate"] = _certificate_payload(rep.certificate)
    return out


def _cmd_pair_reduce(a, ctx):
    res = reduce_pair(ctx.expr(a.f1), ctx.expr(a.f2))
    return {
        "outcome": res.outcome.value,
        "generators": list(res.generators),
        "steps": _steps_payload(res.steps),
    }


def _cmd_member_sub(a, ctx):
    h = ctx.expr(a.h)
    res = reduce_pair(ctx.expr(a.f1), ctx.expr(a.f2))
    if res.outcome is Outcome.FREE_RANK2:
        expr = two_generated_membership(h, *res.generators)
    elif res.outcome is Outcome.RANK1:
        expr = one_generated_membership(h, res.generators[0])
    else:
        expr = Element.constant(h.unit, 1) if h.is_constant() else None
    return {
        "member": expr is not None,
        # x_i in the expression stands for the i-th reduced generator
        "expression": expr,
        "outcome": res.outcome.value,
        "generators": list(res.generators),
        "steps": _steps_payload(res.steps),
    }


def _cmd_centralize(a, ctx):
    res = centralizer_check(ctx.expr(a.f), ctx.expr(a.g))
    out = {"commute": res.commute}
    if res.commute:
        out["c"] = res.c
        out["alpha"] = res.alpha
    return out


def _cmd_tame(a, ctx):
    if ctx.n != 2:
        raise PreconditionError("tame decomposition needs exactly two variables (--vars 2)")
    dec = tame_decompose(ctx.expr(a.f1), ctx.expr(a.f2))
    if isinstance(dec, NotAnAutomorphism):
        return {"automorphism": False, "reason": dec.reason, "witness": list(dec.witness)}
    return {
        "automorphism": True,
        "order": "outermost-first: automorphism = steps[0] o steps[1] o ... o steps[-1]",
        "steps": [{"index": e.index, "alpha": e.alpha, "shift": e.shift} for e in dec.steps],
    }


def _cmd_dims(a, ctx):
    if a.n < 1 or a.d < 1:
        raise PreconditionError("alphabet size and degree must be positive")
    ctx.check_degree(a.d)
    return {"count": len(enumerate_good(a.n, a.d, cap=ctx.limit))}


def _cmd_basis(a, ctx):
    f = ctx.expr(a.f)
    ctx.check_degree(a.D)
    if a.cache_dir:
        basis = BasisCache(a.cache_dir).get(f, a.D, cap=ctx.limit)
    else:
        basis = build_leading_basis(f, a.D, cap=ctx.limit)
    if ctx.fmt == "json":
        return {"basis": basis.to_json()}
    return {"degree_bound": basis.degree_bound, "rows": list(basis.rows)}


class _Context:
    def __init__(self, n, max_degree, limit, fmt):
        self.n = n
        self.max_degree = max_degree
        self.limit = limit
        self.fmt = fmt

    def check_degree(self, d):
        if d > self.max_degree:
            raise ResourceLimitError(f"degree {d} exceeds the cap of {self.max_degree}")

    def expr(self, text) -> Element:
        e = parse_expression(text, self.n)
        self.check_degree(e.degree)
        return e


class _ArgumentError(Exception):
    pass


class _Parser_(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser_(add_help=False)
    common.add_argument("--vars", type=int, default=None, help="alphabet size n (default: largest index used)")
    common.add_argument("--max-degree", type=int, default=None, help="degree cap (env RSALG_MAX_DEGREE, default 8)")
    common.add_argument("--limit", type=int, default=None, help="enumeration cap (env RSALG_ENUM_CAP, default 200000)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = _Parser_(prog="rsalg", description="Computations in free right-symmetric algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser_)

    def cmd(name, func, args, help_, **extra):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for arg in args:
            sp.add_argument(arg)
        for flag, kw in extra.items():
            sp.add_argument(flag, **kw)
        sp.set_defaults(func=func, exprs=args)
        return sp

    cmd("normalize", _cmd_normalize, ["expr"], "normal form of an expression")
    cmd("mul", _cmd_mul, ["a", "b"], "product a*b")
    cmd("leading", _cmd_leading, ["expr"], "leading word and coefficient")
    sp = cmd("member", _cmd_member, ["h", "f"], "is h in the ideal generated by f?")
    sp.add_argument("--degree-bound", type=int, default=None)
    sp.add_argument("--cache-dir", default=None)
    sp = cmd("freiheit", _cmd_freiheit, ["f", "h"], "membership of h (free of x_n) in (f)")
    sp.add_argument("--no-shortcut", action="store_true", help="always run the full elimination")
    cmd("pair-reduce", _cmd_pair_reduce, ["f1", "f2"], "reduce a pair of generators")
    cmd("member-sub", _cmd_member_sub, ["h", "f1", "f2"], "membership in the subalgebra generated by f1, f2")
    cmd("centralize", _cmd_centralize, ["f", "g"], "does g commute with f?")
    cmd("tame", _cmd_tame, ["f1", "f2"], "tame decomposition of (f1, f2)")
    sp = sub.add_parser("dims", parents=[common], help="number of good words of degree d over n letters")
    sp.add_argument("n", type=int)
    sp.add_argument("d", type=int)
    sp.set_defaults(func=_cmd_dims, exprs=[])
    sp = cmd("basis", _cmd_basis, ["f"], "export the leading basis of (f) up to degree D")
    sp.add_argument("D", type=int)
    sp.add_argument("--cache-dir", default=None)
    return p


def run_command(argv) -> tuple[int, str]:
    """Run one request; returns (exit code, output text)."""
    try:
        args = build_parser().parse_args(argv)
        texts = [getattr(args, name) for name in args.exprs]
        n = args.vars if args.vars is not None else _max_var(texts)
        if n < 1:
            raise PreconditionError("--vars must be positive")
        max_degree = args.max_degree if args.max_degree is not None else config.max_degree()
        limit = args.limit if args.limit is not None else config.enum_cap()
        if max_degree < 1 or limit < 1:
            raise PreconditionError("limits must be positive")
        ctx = _Context(n, max_degree, limit, args.format)
        payload = args.func(args, ctx)
        return 0, render(payload, args.format)
    except ResourceLimitError as exc:
        return 2, f"resource limit: {exc}"
    except (PreconditionError, _ArgumentError, ValueError) as exc:
        return 1, f"error: {exc}"


def main(argv=None) -> int:
    code, out = run_command(sys.argv[1:] if argv is None else argv)
    print(out, file=sys.stdout if code == 0 else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
