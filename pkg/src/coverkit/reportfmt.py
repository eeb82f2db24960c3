"""Rendering helpers shared by reports and the CLI.

All numbers print as exact integers or `p/q`; floats never appear.
"""

from __future__ import annotations

from fractions import Fraction


def qstr(x) -> str:
    """Exact decimal-free rendering of ints and Fractions."""
    if x is None:
        return "unknown"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def qjson(x):
    """JSON-safe exact value: ints stay ints, fractions become 'p/q' strings."""
    if x is None:
        return "unknown"
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def markdown_table(headers, rows) -> str:
    widths = [len(h) for h in headers]
    srows = [[qstr(c) for c in row] for row in rows]
    for row in srows:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    def fmt(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
    lines = [fmt(headers), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    lines.extend(fmt(r) for r in srows)
    return "\n".join(lines)
