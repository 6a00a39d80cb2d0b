"""Text formats for matrices and vectors, and exact number rendering.

Matrix files start with ``m n`` and carry ``m`` lines of ``n`` entries. An
entry is an integer, ``p/q`` or a decimal (read exactly over a power of
ten). Blank lines and ``#`` comments are ignored.
"""

from fractions import Fraction
import re

from .errors import FormatError
from .exact_linalg import RationalMatrix

_NUMBER = re.compile(r"[+-]?(\d+(/\d+)?|\d*\.\d+([eE][+-]?\d+)?|\d+\.?\d*[eE][+-]?\d+|\d+\.)$")


def parse_number(tok, line=None, column=None, source=None):
    if not _NUMBER.match(tok):
        raise FormatError(f"not a number: {tok!r}", line, column, source)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {tok!r}", line, column, source) from None


def _tokens(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            toks.append((tok, col + 1))
            col += len(tok)
        if toks:
            yield lineno, toks


def parse_matrix(text, source=None):
    lines = list(_tokens(text))
    if not lines:
        raise FormatError("empty matrix file", source=source)
    lineno, header = lines[0]
    if len(header) != 2:
        raise FormatError("header must be 'm n'", lineno, 1, source)
    dims = []
    for tok, col in header:
        if not tok.isdigit():
            raise FormatError(f"expected a count, got {tok!r}", lineno, col, source)
        dims.append(int(tok))
    m, n = dims
    if m < 1:
        raise FormatError("matrix needs at least one row", lineno, header[0][1], source)
    body = lines[1:]
    if len(body) != m:
        where = body[-1][0] if body else lineno
        raise FormatError(f"header announces {m} rows, found {len(body)}", where, 1, source)
    rows = []
    for lineno, toks in body:
        if len(toks) != n:
            col = toks[n][1] if len(toks) > n else toks[-1][1]
            raise FormatError(f"expected {n} entries, found {len(toks)}", lineno, col, source)
        rows.append([parse_number(tok, lineno, col, source) for tok, col in toks])
    return RationalMatrix(rows, n=n)


def parse_vector(text, source=None):
    """Entries separated by commas and/or whitespace."""
    out = []
    for lineno, toks in _tokens(text.replace(",", " ")):
        out += [parse_number(tok, lineno, col, source) for tok, col in toks]
    if not out:
        raise FormatError("empty vector", source=source)
    return out


def rational_str(x):
    """``"p/q"``, or the bare integer when ``q = 1``."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decimal_str(x):
    """Exact decimal expansion; ``None`` when it does not terminate."""
    x = Fraction(x)
    q = x.denominator
    twos = fives = 0
    while q % 2 == 0:
        q //= 2
        twos += 1
    while q % 5 == 0:
        q //= 5
        fives += 1
    if q != 1:
        return None
    digits = max(twos, fives)
    if digits == 0:
        return str(x.numerator)
    scaled = abs(x.numerator) * 10 ** digits // x.denominator
    sign = "-" if x < 0 else ""
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def float_str(x):
    return format(float(x), ".12g")


def number_str(x):
    """Exact decimal when it terminates, else ``p/q``."""
    return decimal_str(x) or rational_str(x)


def format_matrix(M):
    lines = [f"{M.m} {M.n}"]
    lines += [" ".join(rational_str(v) for v in row) for row in M.rows]
    return "\n".join(lines) + "\n"


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), source=str(path))


def write_matrix(M, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(M))
