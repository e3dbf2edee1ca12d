"""Quantum Bruhat operators on the group algebra, with polynomial coefficients.

Q_gamma sends v to v*s_gamma (Bruhat edge), to Q^{gamma^vee} v*s_gamma
(quantum edge), or to 0; Q_{-gamma} = -Q_gamma and R_gamma = 1 + Q_gamma.
Products of R-operators are represented as |W| x |W| matrices over the exact
polynomial ring Z[Q_1..Q_n], in the ShortLex basis order of W, so golden
matrices compare positionally and bit-exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from . import qbg
from .rootsys import Root, RootSystem, WeylElement


class QPoly:
    """A polynomial in Q_1..Q_n with integer coefficients, in canonical form.

    Exponent vectors live in the positive coroot cone (all entries >= 0 for
    everything produced by the operators).  Zero coefficients are dropped.
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: dict | None = None):
        self.rank = rank
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls, rank: int) -> "QPoly":
        return cls(rank)

    @classmethod
    def const(cls, rank: int, c: int) -> "QPoly":
        return cls(rank, {(0,) * rank: c})

    @classmethod
    def monomial(cls, rank: int, exponent: Sequence[int], c: int = 1) -> "QPoly":
        return cls(rank, {tuple(exponent): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "QPoly") -> "QPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return QPoly(self.rank, out)

    def __sub__(self, other: "QPoly") -> "QPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return QPoly(self.rank, out)

    def __neg__(self) -> "QPoly":
        return QPoly(self.rank, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "QPoly") -> "QPoly":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return QPoly(self.rank, out)

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        """(exponent, coefficient) pairs, exponent-lex descending."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"Q{i + 1}" + (f"^{p}" if p > 1 else "")
                for i, p in enumerate(e)
                if p
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+" if c > 0 else "-") + body)
        return "".join(parts)

    def __repr__(self):
        return f"QPoly({self})"


def parse_qpoly(rank: int, text: str) -> QPoly:
    """Parse the canonical polynomial string form back into a QPoly."""
    s = text.strip().replace(" ", "")
    if s in ("0", ""):
        return QPoly.zero(rank)
    out = QPoly.zero(rank)
    i = 0
    while i < len(s):
        sign = 1
        if s[i] == "+":
            i += 1
        elif s[i] == "-":
            sign = -1
            i += 1
        j = i
        while j < len(s) and s[j] not in "+-":
            j += 1
        out = out + _parse_term(rank, s[i:j], sign)
        i = j
    return out


def _parse_term(rank: int, term: str, sign: int) -> QPoly:
    coeff = 1
    exps = [0] * rank
    for factor in term.split("*"):
        if factor.isdigit():
            coeff *= int(factor)
            continue
        if not factor.startswith("Q"):
            raise ValueError(f"bad factor {factor!r}")
        if "^" in factor:
            var, p = factor.split("^")
            power = int(p)
        else:
            var, power = factor, 1
        exps[int(var[1:]) - 1] += power
    return QPoly.monomial(rank, exps, sign * coeff)


class GroupAlgebraElt:
    """A finite map from Weyl elements to polynomials."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem, terms: dict | None = None):
        self.rs = rs
        self.terms = {w: p for w, p in (terms or {}).items() if not p.is_zero()}

    @classmethod
    def basis(cls, rs: RootSystem, w: WeylElement) -> "GroupAlgebraElt":
        return cls(rs, {w: QPoly.const(rs.rank, 1)})

    def __add__(self, other: "GroupAlgebraElt") -> "GroupAlgebraElt":
        out = dict(self.terms)
        for w, p in other.terms.items():
            out[w] = out.get(w, QPoly.zero(self.rs.rank)) + p
        return GroupAlgebraElt(self.rs, out)

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElt) and self.terms == other.terms

    def coefficient(self, w: WeylElement) -> QPoly:
        return self.terms.get(w, QPoly.zero(self.rs.rank))

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda t: t[0].index)
        return " + ".join(f"({p})*{w}" for w, p in items) or "0"


def apply_Q(rs: RootSystem, gamma: Root, elt) -> GroupAlgebraElt:
    """Apply the quantum Bruhat operator Q_gamma (signed) to v or a sum."""
    if isinstance(elt, WeylElement):
        elt = GroupAlgebraElt.basis(rs, elt)
    sign = gamma.sign
    alpha = abs(gamma)
    out: dict = {}
    for v, p in elt.terms.items():
        edge = qbg.qbg_edge(rs, v, alpha)
        if edge is None:
            continue
        if edge.kind == qbg.QUANTUM:
            factor = QPoly.monomial(rs.rank, rs.coroot(alpha).coeffs, sign)
        else:
            factor = QPoly.const(rs.rank, sign)
        prev = out.get(edge.target, QPoly.zero(rs.rank))
        out[edge.target] = prev + p * factor
    return GroupAlgebraElt(rs, out)


def apply_R_sequence(
    rs: RootSystem, seq: Sequence[Root], v: WeylElement
) -> GroupAlgebraElt:
    """R_{gamma_r} ... R_{gamma_1} v for seq = (gamma_1, ..., gamma_r).

    The sequence is given in application order, matching the path order of
    compatible-path sums.
    """
    acc = GroupAlgebraElt.basis(rs, v)
    for gamma in seq:
        acc = acc + apply_Q(rs, gamma, acc)
    return acc


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix (c_{v,w}) of an operator T, T w = sum_v c_{v,w} v, basis ShortLex."""

    rs: RootSystem
    entries: tuple[tuple[QPoly, ...], ...]

    @property
    def basis(self) -> tuple[WeylElement, ...]:
        return self.rs.weyl_elements

    def entry(self, v: WeylElement, w: WeylElement) -> QPoly:
        return self.entries[v.index][w.index]

    def __eq__(self, other):
        return (
            isinstance(other, OperatorMatrix)
            and self.rs is other.rs
            and self.entries == other.entries
        )

    def to_tsv(self) -> str:
        return "\n".join(
            "\t".join(str(p) for p in row) for row in self.entries
        )

    @staticmethod
    def from_tsv(rs: RootSystem, text: str) -> "OperatorMatrix":
        rows = []
        for line in text.strip().splitlines():
            rows.append(
                tuple(parse_qpoly(rs.rank, cell) for cell in line.split("\t"))
            )
        n = len(rs.weyl_elements)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("golden matrix has the wrong shape")
        return OperatorMatrix(rs, tuple(rows))


def operator_matrix(rs: RootSystem, seq: Sequence[Root]) -> OperatorMatrix:
    """Matrix of R_{gamma_r} ... R_{gamma_1}, seq in application order."""
    n = len(rs.weyl_elements)
    cols = [apply_R_sequence(rs, seq, w) for w in rs.weyl_elements]
    entries = tuple(
        tuple(cols[j].coefficient(rs.weyl_elements[i]) for j in range(n))
        for i in range(n)
    )
    return OperatorMatrix(rs, entries)


def check_yang_baxter(rs: RootSystem, alpha: Root, beta: Root) -> bool:
    """R_alpha R_{s_alpha(beta)} ... R_beta = R_beta ... R_alpha as matrices."""
    seg = rs.rank2_subsystem(alpha, beta).segment
    return operator_matrix(rs, seg) == operator_matrix(rs, tuple(reversed(seg)))


# -- multiplicity checks -------------------------------------------------------


def rank2_chain(rs: RootSystem, reverse: bool = False) -> tuple[Root, ...]:
    """The fixed sweep (beta_1, ..., beta_q) between the two simple roots."""
    if rs.rank != 2:
        raise ValueError("rank-2 types only")
    a, b = rs.simple_root(0), rs.simple_root(1)
    seg = rs.rank2_subsystem(b, a).segment if reverse else rs.rank2_subsystem(a, b).segment
    return seg


def _sk_sequence(chain: Sequence[Root], k: int) -> tuple[Root, ...]:
    # S_k applies beta_k, ..., beta_1 first, then beta_q, ..., beta_{k+1}
    return tuple(reversed(chain[:k])) + tuple(reversed(chain[k:]))


def _tk_sequence(chain: Sequence[Root], k: int, plus: bool) -> tuple[Root, ...]:
    inner = tuple(-b if plus else b for b in reversed(chain[:k]))
    outer = tuple(b if plus else -b for b in reversed(chain[k:]))
    return inner + outer


def _sprime_sequence(chain: Sequence[Root], k: int) -> tuple[Root, ...]:
    return tuple(chain[k:]) + tuple(chain[:k])


@dataclass
class MatrixPropReport:
    type_label: str
    k: int
    reverse: bool
    violations: list
    m3_positions: list  # (v word, w word) where S_k itself has coefficient 3
    n3_positions: list  # (v word, w word) where the opposite sweep has 3

    @property
    def coeff3_positions(self) -> list:
        return self.m3_positions + self.n3_positions

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_matrix_props(rs: RootSystem, k: int, reverse: bool = False) -> MatrixPropReport:
    """Check the multiplicity claims for S_k against T_k^+/- and S'_k.

    Multiplicities in S_k entries are 1 or 2 (1, 2 or 3 in G2); where the
    multiplicity is 2 both signed operators and the opposite sweep vanish;
    where it is 1 the signed coefficients are +-1.  Every coefficient-3
    location is reported.
    """
    chain = rank2_chain(rs, reverse)
    q = len(chain)
    if not 0 <= k <= q:
        raise ValueError(f"k must be within 0..{q}")
    g2 = rs.type_label == "G2"
    allowed = {1, 2, 3} if g2 else {1, 2}
    s = operator_matrix(rs, _sk_sequence(chain, k))
    tp = operator_matrix(rs, _tk_sequence(chain, k, plus=True))
    tm = operator_matrix(rs, _tk_sequence(chain, k, plus=False))
    sp = operator_matrix(rs, _sprime_sequence(chain, k))
    violations = []
    m3 = []
    n3 = []
    basis = rs.weyl_elements
    for v in basis:
        for w in basis:
            entry = s.entry(v, w)
            signed_p = tp.entry(v, w)
            signed_m = tm.entry(v, w)
            swept = sp.entry(v, w)
            where = (v.word_str, w.word_str)
            for exp, m in entry.terms.items():
                if m not in allowed:
                    violations.append((where, "multiplicity", exp, m))
                    continue
                np_, nm = signed_p.terms.get(exp, 0), signed_m.terms.get(exp, 0)
                ns = swept.terms.get(exp, 0)
                if m == 2:
                    if np_ != 0 or nm != 0:
                        violations.append((where, "signed-not-zero", exp, (np_, nm)))
                    if (ns not in (0, 2)) if g2 else (ns != 0):
                        violations.append((where, "sweep", exp, ns))
                elif m == 1:
                    if np_ not in (1, -1) or nm not in (1, -1):
                        violations.append((where, "signed-unit", exp, (np_, nm)))
                    if (ns not in (1, 3)) if g2 else (ns != 1):
                        violations.append((where, "sweep", exp, ns))
                    if ns == 3:
                        n3.append(where)
                else:  # m == 3, G2 only
                    m3.append(where)
                    if np_ not in (1, -1) or nm not in (1, -1):
                        violations.append((where, "signed-unit", exp, (np_, nm)))
                    if ns != 1:
                        violations.append((where, "sweep", exp, ns))
            for exp, c in signed_p.terms.items():
                if exp not in entry.terms and c != 0:
                    violations.append((where, "signed-outside", exp, c))
            for exp, c in signed_m.terms.items():
                if exp not in entry.terms and c != 0:
                    violations.append((where, "signed-outside", exp, c))
    return MatrixPropReport(rs.type_label, k, reverse, violations, m3, n3)


# -- golden data ---------------------------------------------------------------


def _golden_root():
    return resources.files("qalcove").joinpath("data/golden")


def load_golden_manifest() -> list[dict]:
    raw = _golden_root().joinpath("manifest.json").read_text(encoding="utf-8")
    return json.loads(raw)


def check_golden(rs: RootSystem) -> list[tuple[str, bool]]:
    """Recompute each golden operator matrix for this type; verify checksums."""
    results = []
    for item in load_golden_manifest():
        if item["type"] != rs.type_label:
            continue
        blob = _golden_root().joinpath(item["file"]).read_bytes()
        digest = hashlib.sha256(blob).hexdigest()
        if digest != item["sha256"]:
            results.append((item["name"], False))
            continue
        golden = OperatorMatrix.from_tsv(rs, blob.decode("utf-8"))
        seq = tuple(rs.root(c) for c in item["sequence"])
        computed = operator_matrix(rs, seq)
        results.append((item["name"], computed == golden))
    return results
