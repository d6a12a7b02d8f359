"""Text formats: algebra files, 2-cochain files, matrix files, and inline forms.

Algebra grammar (1-based indices)::

    # comment
    algebra h3
    dim 3
    [1,2] = 3:1

Each bracket line is ``[i,j] = k:c, k:c, ...`` with ``i < j`` and ``c`` an
integer or ``a/b``.  Unlisted pairs bracket to zero.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .algebra import LieAlgebra, require_valid
from .deform import TwoCochain
from .errors import MalformedInputError
from .exterior import PForm

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")
_BRACKET = re.compile(r"\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*=\s*")
_TERM = re.compile(r"\s*(\d+)\s*:\s*(\S+?)\s*(?:,|$)")


def parse_rational(text: str, line: int | None = None, column: int | None = None) -> Fraction:
    s = text.strip()
    if not _RATIONAL.fullmatch(s):
        raise MalformedInputError(f"malformed rational {text!r}", line, column)
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise MalformedInputError(f"zero denominator in {text!r}", line, column)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(c: Fraction) -> str:
    return str(Fraction(c))


def _strip_comment(raw: str) -> str:
    cut = raw.find("#")
    return raw if cut < 0 else raw[:cut]


def _parse_table(text: str, what: str) -> tuple[str | None, int, dict]:
    name = None
    dim = None
    seen: dict[tuple[int, int], int] = {}
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        lead = len(line) - len(line.lstrip())
        body = line.strip()
        col = lead + 1
        if body.startswith("algebra"):
            parts = body.split(None, 1)
            if parts[0] != "algebra" or len(parts) != 2:
                raise MalformedInputError("expected 'algebra <name>'", lineno, col)
            if name is not None or dim is not None:
                raise MalformedInputError("'algebra' must come first and only once", lineno, col)
            name = parts[1].strip()
            continue
        if body.startswith("dim"):
            parts = body.split()
            if parts[0] != "dim" or len(parts) != 2 or not parts[1].isdigit():
                raise MalformedInputError("expected 'dim <n>'", lineno, col)
            if dim is not None:
                raise MalformedInputError("duplicate 'dim' line", lineno, col)
            dim = int(parts[1])
            continue
        m = _BRACKET.match(line, lead)
        if not m:
            raise MalformedInputError(f"unrecognized line in {what} file", lineno, col)
        if dim is None:
            raise MalformedInputError("'dim' must precede bracket lines", lineno, col)
        i, j = int(m.group(1)), int(m.group(2))
        icol = m.start(1) + 1
        if i >= j:
            raise MalformedInputError(f"bracket [{i},{j}] needs i < j", lineno, icol)
        if i < 1 or j > dim:
            raise MalformedInputError(f"bracket [{i},{j}] out of range 1..{dim}", lineno, icol)
        if (i, j) in seen:
            raise MalformedInputError(f"duplicate bracket [{i},{j}] (first on line {seen[(i, j)]})", lineno, icol)
        seen[(i, j)] = lineno
        pos = m.end()
        terms: dict[int, Fraction] = {}
        if pos >= len(line):
            raise MalformedInputError("expected 'k:c' terms after '='", lineno, pos + 1)
        while pos < len(line):
            t = _TERM.match(line, pos)
            if not t:
                raise MalformedInputError("expected 'k:c'", lineno, pos + 1)
            k = int(t.group(1))
            if not 1 <= k <= dim:
                raise MalformedInputError(f"image index {k} out of range 1..{dim}", lineno, t.start(1) + 1)
            if k in terms:
                raise MalformedInputError(f"index {k} repeated in one bracket", lineno, t.start(1) + 1)
            terms[k] = parse_rational(t.group(2), lineno, t.start(2) + 1)
            pos = t.end()
        if line.endswith(","):
            raise MalformedInputError("trailing ','", lineno, len(line))
        table[(i - 1, j - 1)] = {k - 1: c for k, c in terms.items() if c}
    if dim is None:
        raise MalformedInputError("missing 'dim' line", len(text.splitlines()) + 1, 1)
    return name, dim, table


def parse_algebra(text: str) -> LieAlgebra:
    """Parse and validate; Jacobi failures raise InvalidAlgebraError."""
    name, dim, table = _parse_table(text, "algebra")
    L = LieAlgebra(dim, table, name=name)
    require_valid(L)
    return L


def parse_algebra_unchecked(text: str) -> LieAlgebra:
    name, dim, table = _parse_table(text, "algebra")
    return LieAlgebra(dim, table, name=name)


def parse_cochain(text: str) -> TwoCochain:
    _, dim, table = _parse_table(text, "cochain")
    return TwoCochain(dim, table)


def _serialize_table(dim: int, constants, name: str | None) -> str:
    out = []
    if name:
        out.append(f"algebra {name}")
    out.append(f"dim {dim}")
    for (i, j) in sorted(constants):
        terms = ", ".join(f"{k + 1}:{format_rational(c)}" for k, c in sorted(constants[(i, j)]))
        out.append(f"[{i + 1},{j + 1}] = {terms}")
    return "\n".join(out) + "\n"


def serialize_algebra(L: LieAlgebra) -> str:
    return _serialize_table(L.dim, L.constants, L.name)


def serialize_cochain(phi: TwoCochain) -> str:
    return _serialize_table(phi.ambient_dim, phi.values, None)


def parse_matrix(text: str, n: int | None = None) -> list[list[Fraction]]:
    """Whitespace-separated rationals, one row per line (row i = image of X_i)."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        row = []
        for m in re.finditer(r"\S+", line):
            row.append(parse_rational(m.group(0), lineno, m.start() + 1))
        rows.append(row)
    if n is not None and len(rows) == 0 and n == 0:
        return []
    width = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != width:
            raise MalformedInputError("matrix rows have different lengths")
    if n is not None and (len(rows) != n or width != n):
        raise MalformedInputError(f"expected a {n}x{n} matrix, got {len(rows)}x{width}")
    return rows


def format_matrix(M: Sequence[Sequence]) -> str:
    return "".join(" ".join(format_rational(x) for x in row) + "\n" for row in M)


def parse_two_form(text: str, n: int) -> PForm:
    """``"i-j:c, ..."`` (1-based) into a 2-form on dimension n."""
    coeffs: dict[tuple[int, int], Fraction] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        m = re.fullmatch(r"(\d+)\s*-\s*(\d+)\s*:\s*(\S+)", part)
        if not m:
            raise MalformedInputError(f"expected 'i-j:c', got {part!r}")
        i, j = int(m.group(1)), int(m.group(2))
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise MalformedInputError(f"bad index pair {i}-{j} for dimension {n}")
        c = parse_rational(m.group(3))
        if i > j:
            i, j, c = j, i, -c
        coeffs[(i - 1, j - 1)] = coeffs.get((i - 1, j - 1), Fraction(0)) + c
    return PForm(n, 2, coeffs)


def parse_one_form(text: str, n: int) -> PForm:
    """``"k:c, ..."`` (1-based) into a 1-form."""
    vec = [Fraction(0)] * n
    for part in filter(None, (p.strip() for p in text.split(","))):
        m = re.fullmatch(r"(\d+)\s*:\s*(\S+)", part)
        if not m:
            raise MalformedInputError(f"expected 'k:c', got {part!r}")
        k = int(m.group(1))
        if not 1 <= k <= n:
            raise MalformedInputError(f"index {k} out of range 1..{n}")
        vec[k - 1] += parse_rational(m.group(2))
    return PForm.one_form(n, vec)


def form_terms(theta: PForm) -> list[list]:
    """Report encoding: [[i, j, "c"], ...] with 1-based indices."""
    return [[i + 1, j + 1, format_rational(c)] for (i, j), c in sorted(theta.coeffs.items())]


def format_two_form(theta: PForm) -> str:
    return ", ".join(f"{i}-{j}:{c}" for i, j, c in form_terms(theta))
