"""Text forms for ring descriptors and elements.

Descriptor grammar::

    desc   := "q" | "fp:" P | "fpk:" P ":" K [":" coeffs] | "z:" N
            | "ratfunc:" desc ":" VAR
    coeffs := c0 "," c1 "," ... "," cK      (ascending, monic: cK == 1)

Element grammar: an arithmetic expression over integer literals, ``+ - * /``,
``^`` (or ``**``) with an integer exponent, parentheses and the generator
names of the ring -- ``z`` for F_{p^k}, the variable name(s) of a function
field.  Examples: ``3/2``, ``-1``, ``2*z+1``, ``(s^2+1)/(s+3)``.
"""

from __future__ import annotations

import ast

from ..errors import ParseError, PreconditionError
from .rings import GF, QQ, Ring, RingElem, Zmod


def parse_ring(desc: str) -> Ring:
    desc = desc.strip()
    try:
        if desc == "q":
            return QQ
        head, _, rest = desc.partition(":")
        if head == "fp":
            return GF(int(rest))
        if head == "fpk":
            parts = rest.split(":")
            p, k = int(parts[0]), int(parts[1])
            if len(parts) == 2:
                return GF(p, k)
            if len(parts) == 3:
                return GF(p, k, tuple(int(c) for c in parts[2].split(",")))
            raise ParseError(f"bad fpk descriptor {desc!r}")
        if head == "z":
            return Zmod(int(rest))
        if head == "ratfunc":
            base, sep, var = rest.rpartition(":")
            if not sep:
                raise ParseError(f"bad ratfunc descriptor {desc!r}")
            from .ratfunc import function_field

            return function_field(parse_ring(base), var)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, (ParseError, PreconditionError)):
            raise
        raise ParseError(f"bad ring descriptor {desc!r}: {exc}") from exc
    raise ParseError(f"unknown ring descriptor {desc!r}")


def parse_elem(ring: Ring, text: str) -> RingElem:
    try:
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}") from exc
    names = ring.generators()
    return _eval(tree.body, ring, names, text)


def _eval(node, ring, names, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return ring(node.value)
    if isinstance(node, ast.Name):
        if node.id not in names:
            raise ParseError(f"unknown symbol {node.id!r} in {text!r} over {ring.descriptor}")
        return ring.coerce(names[node.id])
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, ring, names, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ParseError(f"exponent must be an integer literal in {text!r}")
            return _eval(node.left, ring, names, text) ** node.right.value
        a = _eval(node.left, ring, names, text)
        b = _eval(node.right, ring, names, text)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
    raise ParseError(f"unsupported syntax in {text!r}")


def parse_list(ring: Ring, text: str) -> list:
    return [parse_elem(ring, part) for part in text.split(",")]


def _needs_parens(s: str) -> bool:
    return any(ch in s[1:] for ch in "+-") or "/" in s


def format_terms(coeff_strs, var: str) -> str:
    """Render ascending coefficient strings as ``c_n*var^n+...+c_0``."""
    terms = []
    for i in range(len(coeff_strs) - 1, -1, -1):
        c = coeff_strs[i]
        if c == "0":
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            term = c
        elif c == "1":
            term = mono
        elif c == "-1":
            term = "-" + mono
        else:
            term = f"({c})*{mono}" if _needs_parens(c) else f"{c}*{mono}"
        if terms and not term.startswith("-"):
            terms.append("+" + term)
        else:
            terms.append(term)
    return "".join(terms) if terms else "0"
