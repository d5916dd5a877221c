"""The six parastrophes of a quasigroup and translation transfer between them.

Each parastrophe permutes the three roles (left argument, right argument,
product) of the base operation.  The symbol-to-operation mapping used
throughout is:

    e -> x*y    12 -> y*x    23 -> x\\y    132 -> y\\x
    13 -> y/x   123 -> x/y
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .qcore import Permutation, Quasigroup, TranslationKind, from_table


class ParastropheSym(Enum):
    ID = "e"
    S12 = "12"
    S13 = "13"
    S23 = "23"
    S123 = "123"
    S132 = "132"

    @property
    def token(self) -> str:
        return self.value


# For each symbol, the index map pi such that the derived operation B
# satisfies: B(d0, d1) = d2  iff  A(d[pi[0]], d[pi[1]]) = d[pi[2]].
_ROLE_MAP = {
    ParastropheSym.ID: (0, 1, 2),
    ParastropheSym.S12: (1, 0, 2),
    ParastropheSym.S23: (0, 2, 1),
    ParastropheSym.S132: (1, 2, 0),
    ParastropheSym.S13: (2, 0, 1),
    ParastropheSym.S123: (2, 1, 0),
}

_SYM_BY_ROLE = {v: k for k, v in _ROLE_MAP.items()}

# Table rows in display order: xy, yx, x\y, y\x, y/x, x/y.
ROW_ORDER = (
    ParastropheSym.ID,
    ParastropheSym.S12,
    ParastropheSym.S23,
    ParastropheSym.S132,
    ParastropheSym.S13,
    ParastropheSym.S123,
)

ROW_LABELS = {
    ParastropheSym.ID: "xy",
    ParastropheSym.S12: "yx",
    ParastropheSym.S23: "x\\y",
    ParastropheSym.S132: "y\\x",
    ParastropheSym.S13: "y/x",
    ParastropheSym.S123: "x/y",
}


def parastrophe_value(q: Quasigroup, sigma: ParastropheSym, x: int, y: int) -> int:
    """B(x, y) for the sigma-parastrophe B of q, without building B."""
    if sigma is ParastropheSym.ID:
        return q.mul_table[x][y]
    if sigma is ParastropheSym.S12:
        return q.mul_table[y][x]
    if sigma is ParastropheSym.S23:
        return q.ldiv_table[x][y]
    if sigma is ParastropheSym.S132:
        return q.ldiv_table[y][x]
    if sigma is ParastropheSym.S13:
        return q.rdiv_table[y][x]
    if sigma is ParastropheSym.S123:
        return q.rdiv_table[x][y]
    raise ValueError(f"unknown parastrophe {sigma!r}")


def apply_parastrophe(q: Quasigroup, sigma: ParastropheSym) -> Quasigroup:
    """The sigma-parastrophe of q, as a validated quasigroup."""
    n = q.n
    rows = [
        [parastrophe_value(q, sigma, x, y) for y in range(n)] for x in range(n)
    ]
    return from_table(rows)


def compose(sigma: ParastropheSym, tau: ParastropheSym) -> ParastropheSym:
    """The symbol with apply(compose(sigma, tau), q) = apply(sigma, apply(tau, q)).

    Composition is right-to-left: tau is applied to q first.
    """
    ps, pt = _ROLE_MAP[sigma], _ROLE_MAP[tau]
    return _SYM_BY_ROLE[(ps[pt[0]], ps[pt[1]], ps[pt[2]])]


# Translation transfer: for parastrophe B of q, the translation of B of a
# given kind at a equals a (possibly different) kind of translation of q at
# the same a.  TRANSFER[sigma][kind] names that kind of q.
_K = TranslationKind
TRANSFER: dict[ParastropheSym, dict[TranslationKind, TranslationKind]] = {
    ParastropheSym.ID: {
        _K.R: _K.R, _K.L: _K.L, _K.P: _K.P,
        _K.RINV: _K.RINV, _K.LINV: _K.LINV, _K.PINV: _K.PINV,
    },
    ParastropheSym.S12: {
        _K.R: _K.L, _K.L: _K.R, _K.P: _K.PINV,
        _K.RINV: _K.LINV, _K.LINV: _K.RINV, _K.PINV: _K.P,
    },
    ParastropheSym.S23: {
        _K.R: _K.P, _K.L: _K.LINV, _K.P: _K.R,
        _K.RINV: _K.PINV, _K.LINV: _K.L, _K.PINV: _K.RINV,
    },
    ParastropheSym.S132: {
        _K.R: _K.LINV, _K.L: _K.P, _K.P: _K.RINV,
        _K.RINV: _K.L, _K.LINV: _K.PINV, _K.PINV: _K.R,
    },
    ParastropheSym.S13: {
        _K.R: _K.PINV, _K.L: _K.RINV, _K.P: _K.L,
        _K.RINV: _K.P, _K.LINV: _K.R, _K.PINV: _K.LINV,
    },
    ParastropheSym.S123: {
        _K.R: _K.RINV, _K.L: _K.PINV, _K.P: _K.LINV,
        _K.RINV: _K.R, _K.LINV: _K.P, _K.PINV: _K.L,
    },
}


def transfer_kind(kind: TranslationKind, sigma: ParastropheSym) -> TranslationKind:
    """Which translation of q equals the given translation of the sigma-parastrophe."""
    return TRANSFER[sigma][kind]


@dataclass(frozen=True)
class TransferCell:
    kind: TranslationKind
    sigma: ParastropheSym
    designated: TranslationKind
    ok: bool
    failure: tuple[int, int] | None  # (a, x) of the first mismatch


def verify_translation_transfer(q: Quasigroup) -> tuple[TransferCell, ...]:
    """Check all 36 (kind, parastrophe) transfer cells at every element a."""
    cells = []
    paras = {s: apply_parastrophe(q, s) for s in ParastropheSym}
    for kind in TranslationKind:
        for sigma in ParastropheSym:
            designated = TRANSFER[sigma][kind]
            ok, failure = True, None
            b = paras[sigma]
            for a in range(q.n):
                lhs: Permutation = b.translation(kind, a)
                rhs: Permutation = q.translation(designated, a)
                if lhs != rhs:
                    bad = next(
                        x for x in range(q.n) if lhs.images[x] != rhs.images[x]
                    )
                    ok, failure = False, (a, bad)
                    break
            cells.append(TransferCell(kind, sigma, designated, ok, failure))
    return tuple(cells)
