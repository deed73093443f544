"""Shortform notation: golden data files and LaTeX output.

A shortform word such as ``1234`` stands for ``dx_1 ^ dx_2 ^ dx_3 ^ dx_4``;
on R^16 a primed digit ``a'`` is coordinate ``a + 8``. A trailing ``+star``
appends the Hodge dual of everything before it.

Golden file syntax, one item per line (``#`` starts a comment)::

    [name] n=16 k=4        start a section
    -12 1 2 3 4            coefficient then indices, primes allowed: 1'
    +2 bold 1 2 3 4        coefficient times the bold block on a, b, c, d
    +6 pairs               coefficient times sum over a < b of a b a' b'
    star                   add the Hodge dual of the section so far
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .exterior import ExteriorForm, hodge_star, sort_sign

__all__ = [
    "BOLD_PATTERN",
    "bold_block",
    "pairs_form",
    "parse_golden",
    "load_golden",
    "golden_files",
    "to_latex",
    "parse_latex",
]

# sign and primes (per letter a, b, c, d) of the six words of a bold block
BOLD_PATTERN = (
    (+1, (0, 0, 1, 1)),
    (-1, (0, 1, 0, 1)),
    (+1, (0, 1, 1, 0)),
    (+1, (1, 0, 0, 1)),
    (-1, (1, 0, 1, 0)),
    (+1, (1, 1, 0, 0)),
)


def bold_block(a: int, b: int, c: int, d: int, coeff=1) -> ExteriorForm:
    """The bold block on ``a, b, c, d`` in R^16.

    Each word is read as the monomial in increasing coordinate order with
    the printed sign, so ``ab'cd'`` is ``+dx_a dx_c dx_b' dx_d'``.
    """
    terms: dict[tuple[int, ...], Fraction] = {}
    for sign, primes in BOLD_PATTERN:
        key = tuple(sorted(x + 8 * p for x, p in zip((a, b, c, d), primes)))
        terms[key] = terms.get(key, Fraction(0)) + sign * Fraction(coeff)
    return ExteriorForm(16, 4, terms)


def pairs_form(coeff=1) -> ExteriorForm:
    """``sum_{a<b} a b a' b'`` on R^16."""
    terms = {}
    for a, b in itertools.combinations(range(1, 9), 2):
        s, key = sort_sign((a, b, a + 8, b + 8))
        terms[key] = s * Fraction(coeff)
    return ExteriorForm(16, 4, terms)


def _index(tok: str, n: int) -> int:
    if tok.endswith("'"):
        if n != 16:
            raise ValueError(f"primed index {tok!r} only makes sense on R^16")
        return int(tok[:-1]) + 8
    return int(tok)


_HEADER = re.compile(r"^\[(?P<name>[\w.-]+)\]\s*(?P<attrs>.*)$")


def parse_golden(text: str, source: str = "<string>") -> dict[str, ExteriorForm]:
    """Parse golden-file text into ``{section name: form}``."""
    out: dict[str, ExteriorForm] = {}
    name = None
    n = k = 0
    acc = None

    def close():
        if name is not None:
            out[name] = acc

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        m = _HEADER.match(line)
        if m:
            close()
            attrs = dict(kv.split("=", 1) for kv in m.group("attrs").split())
            try:
                n, k = int(attrs["n"]), int(attrs["k"])
            except (KeyError, ValueError):
                raise ValueError(f"{where}: section header needs n=<int> k=<int>") from None
            name = m.group("name")
            if name in out:
                raise ValueError(f"{where}: duplicate section {name!r}")
            acc = ExteriorForm.zero(n, k)
            continue
        if name is None:
            raise ValueError(f"{where}: term outside of a section")
        toks = line.split()
        if toks == ["star"]:
            acc = acc + hodge_star(acc)
            continue
        try:
            coeff = Fraction(toks[0])
        except ValueError:
            raise ValueError(f"{where}: bad coefficient {toks[0]!r}") from None
        rest = toks[1:]
        if rest and rest[0] == "bold":
            if n != 16 or k != 4 or len(rest) != 5:
                raise ValueError(f"{where}: bold needs four indices in a 4-form on R^16")
            acc = acc + bold_block(*map(int, rest[1:]), coeff=coeff)
        elif rest == ["pairs"]:
            if n != 16 or k != 4:
                raise ValueError(f"{where}: pairs needs a 4-form on R^16")
            acc = acc + pairs_form(coeff)
        else:
            if len(rest) != k:
                raise ValueError(f"{where}: expected {k} indices, got {len(rest)}")
            try:
                idx = [_index(t, n) for t in rest]
            except ValueError as exc:
                raise ValueError(f"{where}: {exc}") from None
            acc = acc + ExteriorForm(n, k, {tuple(idx): coeff})
    close()
    return out


def golden_files(data_dir: str | Path | None = None) -> list[Path]:
    if data_dir is None:
        base = resources.files("cliffordforms") / "data"
        return sorted(Path(str(p)) for p in base.iterdir() if p.name.endswith(".txt"))
    return sorted(Path(data_dir).glob("*.txt"))


def load_golden(data_dir: str | Path | None = None) -> dict[str, ExteriorForm]:
    """Every section of every ``*.txt`` file in ``data_dir`` (default: shipped data)."""
    out: dict[str, ExteriorForm] = {}
    for path in golden_files(data_dir):
        for key, form in parse_golden(path.read_text(), path.name).items():
            if key in out:
                raise ValueError(f"section {key!r} defined twice ({path.name})")
            out[key] = form
    return out


# ---------------------------------------------------------------- LaTeX


def _word(idx, n: int) -> str:
    if n == 16:
        return "".join(f"{i - 8}'" if i > 8 else str(i) for i in idx)
    if n > 9:
        return ",".join(map(str, idx))
    return "".join(map(str, idx))


def _coeff_tex(c: Fraction, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    if a == 1:
        body = ""
    elif a.denominator == 1:
        body = str(a.numerator)
    else:
        body = rf"\frac{{{a.numerator}}}{{{a.denominator}}}"
    return sign + body


def _fold_bold(form: ExteriorForm) -> tuple[list, ExteriorForm]:
    blocks = []
    rest = form
    for quad in itertools.combinations(range(1, 9), 4):
        unit = bold_block(*quad)
        key, sgn = next(iter(unit.items()))
        c = rest.coeff(*key) * sgn
        if c and all(rest.coeff(*t) == c * s for t, s in unit.items()):
            blocks.append((c, quad))
            rest = rest - unit * c
    return blocks, rest


def to_latex(form: ExteriorForm, fold: bool = True) -> str:
    """Shortform LaTeX, e.g. ``-\\shortform{12}+\\shortform{34}``.

    With ``fold`` a middle-degree form equal to plus or minus its Hodge dual
    prints one half followed by ``+\\star`` (or ``-\\star``), and on R^16
    bold blocks and the ``aba'b'`` sum are recognised.
    """
    if not form:
        return "0"
    parts: list[str] = []
    rest = form
    tail = ""
    if fold and form.n == 16 and form.k == 4:
        blocks, rest = _fold_bold(rest)
        pf = pairs_form()
        first_key, first_sign = next(iter(pf.items()))
        c = rest.coeff(*first_key) * first_sign
        pairs = None
        if c and all(rest.coeff(*t) == c * s for t, s in pf.items()):
            pairs = c
            rest = rest - pf * c
        body = [(key, cf) for key, cf in rest.items()]
        for key, cf in body:
            parts.append(_coeff_tex(cf, not parts) + rf"\shortform{{{_word(key, 16)}}}")
        for cf, quad in blocks:
            parts.append(_coeff_tex(cf, not parts) + rf"\boldshortform{{{''.join(map(str, quad))}}}")
        if pairs is not None:
            parts.append(_coeff_tex(pairs, not parts) + r"\sum_{a<b}\shortform{aba'b'}")
        return "".join(parts)
    if fold and 2 * form.k == form.n:
        dual = hodge_star(form)
        if dual == form or dual == -form:
            half = {key: c for key, c in form.items() if 1 in key}
            rest = ExteriorForm(form.n, form.k, half)
            tail = r"+\star" if dual == form else r"-\star"
    for key, c in rest.items():
        parts.append(_coeff_tex(c, not parts) + rf"\shortform{{{_word(key, form.n)}}}")
    return "".join(parts) + tail


_TEX_TERM = re.compile(
    r"(?P<sign>[+-]?)(?:\\frac\{(?P<fn>\d+)\}\{(?P<fd>\d+)\}|(?P<int>\d+))?"
    r"(?:\\(?P<kind>shortform|boldshortform)\{(?P<word>[^}]*)\}|(?P<pairs>\\sum_\{a<b\}\\shortform\{aba'b'\})|(?P<star>\\star))"
)


def _split_word(word: str, n: int) -> list[int]:
    if "," in word:
        return [int(t) for t in word.split(",")]
    return [_index(t, n) for t in re.findall(r"\d'?", word)]


def parse_latex(text: str, n: int, k: int) -> ExteriorForm:
    """Inverse of :func:`to_latex`."""
    text = text.replace(" ", "")
    if text == "0":
        return ExteriorForm.zero(n, k)
    acc = ExteriorForm.zero(n, k)
    pos = 0
    while pos < len(text):
        m = _TEX_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse shortform at {text[pos:pos + 20]!r}")
        pos = m.end()
        if m.group("fn"):
            c = Fraction(int(m.group("fn")), int(m.group("fd")))
        elif m.group("int"):
            c = Fraction(int(m.group("int")))
        else:
            c = Fraction(1)
        if m.group("sign") == "-":
            c = -c
        if m.group("star"):
            acc = acc + hodge_star(acc) * c
        elif m.group("pairs"):
            acc = acc + pairs_form(c)
        elif m.group("kind") == "boldshortform":
            acc = acc + bold_block(*map(int, m.group("word")), coeff=c)
        else:
            acc = acc + ExteriorForm(n, k, {tuple(_split_word(m.group("word"), n)): c})
    return acc
