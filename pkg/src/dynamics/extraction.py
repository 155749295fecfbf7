"""Exact extraction of forward / backward / full integrable parts of affine equations.

With C^0 = alpha(E) the forward chain is

    E^{k+1} = E  /\\  beta^-1(C^k),    C^{k+1} = alpha(E^{k+1})

and stops at the first k with E^{k+1} = E^k; the extracted set is E^k.
BACKWARD swaps the roles of alpha and beta (D^k = beta(E^k)), FULL intersects
both preimages each round.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import pandas as pd

from ..numkernel import (
    AffineSubspace, affine_equal, affine_image, affine_intersect, affine_is_subset, affine_preimage,
)
from ..utils.errors import NotStabilizedError
from .equation import ChainMode, Direction, EquationSequence, ImplicitEquation, Representation


def _require_affine(E: ImplicitEquation):
    if E.representation is not Representation.AFFINE:
        raise ValueError(f"Exact extraction needs an AFFINE equation, got {E.representation.value}")
    if E.source_map is None or E.target_map is None:
        raise ValueError("Exact extraction needs affine source and target maps")


def inclusion_test(E: ImplicitEquation, direction: Direction = Direction.FORWARD) -> bool:
    """Forward: E in beta^-1(alpha(E)); backward: E in alpha^-1(beta(E))."""
    _require_affine(E)
    S = E.subspace
    if direction is Direction.FORWARD:
        hull = affine_preimage(affine_image(S, E.source_map), E.target_map)
    else:
        hull = affine_preimage(affine_image(S, E.target_map), E.source_map)
    return affine_is_subset(S, hull)


@dataclass
class ChainReport:
    """Constraint chain of one extraction run."""

    mode: ChainMode
    C: List[AffineSubspace] = field(default_factory=list)
    D: List[AffineSubspace] = field(default_factory=list)
    E: List[AffineSubspace] = field(default_factory=list)
    stabilization_index: Optional[int] = None
    max_iter: int = 0
    extracted: Optional[AffineSubspace] = None
    label: str = "E"

    @property
    def stabilized(self) -> bool:
        return self.stabilization_index is not None

    def require_stabilized(self) -> 'ChainReport':
        if not self.stabilized:
            raise NotStabilizedError(
                f"{self.mode.value} chain of {self.label} did not stabilize within {self.max_iter} iterations")
        return self

    @property
    def c_dims(self) -> List[int]:
        return [S.dim for S in self.C]

    @property
    def d_dims(self) -> List[int]:
        return [S.dim for S in self.D]

    @property
    def e_dims(self) -> List[int]:
        return [S.dim for S in self.E]

    def to_frame(self) -> pd.DataFrame:
        """One row per k."""
        rows = []
        for k, E_k in enumerate(self.E):
            rows.append({
                'mode': self.mode.value,
                'k': k,
                'dim_C': self.C[k].dim if k < len(self.C) else None,
                'dim_D': self.D[k].dim if k < len(self.D) else None,
                'dim_E': E_k.dim,
                'stabilized': int(self.stabilization_index == k),
            })
        return pd.DataFrame(rows, columns=['mode', 'k', 'dim_C', 'dim_D', 'dim_E', 'stabilized'])

    def to_text(self, names: Optional[List[str]] = None) -> str:
        lines = [f"{self.mode.value.upper()} chain of {self.label}"]
        for k, E_k in enumerate(self.E):
            parts = [f"k={k}", f"dim E={E_k.dim}"]
            if k < len(self.C):
                parts.append(f"dim C={self.C[k].dim}")
            if k < len(self.D):
                parts.append(f"dim D={self.D[k].dim}")
            lines.append("  " + "  ".join(parts))
        if self.stabilized:
            lines.append(f"stabilized at k={self.stabilization_index}")
        else:
            lines.append(f"NOT_STABILIZED after {self.max_iter} iterations")
        lines.append("extracted set:")
        lines.extend("  " + line for line in self.extracted.to_text(names))
        return "\n".join(lines)


def extract_affine(E: ImplicitEquation, mode: ChainMode = ChainMode.FORWARD,
                   max_iter: Optional[int] = None) -> ChainReport:
    """Run the constraint-chain algorithm on an AFFINE equation."""
    _require_affine(E)
    S = E.subspace
    alpha, beta = E.source_map, E.target_map
    if max_iter is None:
        max_iter = S.ambient_dim + 1
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")

    report = ChainReport(mode=mode, max_iter=max_iter, label=E.name)
    report.E.append(S)
    forward = mode in (ChainMode.FORWARD, ChainMode.FULL)
    backward = mode in (ChainMode.BACKWARD, ChainMode.FULL)
    if forward:
        report.C.append(affine_image(S, alpha))
    if backward:
        report.D.append(affine_image(S, beta))

    for k in range(max_iter):
        E_next = S
        if forward:
            E_next = affine_intersect(E_next, affine_preimage(report.C[k], beta))
        if backward:
            E_next = affine_intersect(E_next, affine_preimage(report.D[k], alpha))
        if affine_equal(E_next, report.E[k]):
            report.stabilization_index = k
            break
        report.E.append(E_next)
        if forward:
            report.C.append(affine_image(E_next, alpha))
        if backward:
            report.D.append(affine_image(E_next, beta))

    report.extracted = report.E[-1]
    return report


@dataclass
class SequenceExtraction:
    """Per-index chains [C_k]^i, [E_k]^i of an equation sequence."""

    k0: int
    depth: int
    reports: Dict[int, ChainReport] = field(default_factory=dict)

    def chain(self, k: int) -> ChainReport:
        return self.reports[k]

    def base_set(self, k: int, i: int) -> AffineSubspace:
        """[C_k]^i."""
        return self.reports[k].C[i]

    def equation_set(self, k: int, i: int) -> AffineSubspace:
        """[E_k]^i."""
        return self.reports[k].E[i]


def sequence_extract(seq: EquationSequence, k0: int = 0, depth: int = 1) -> SequenceExtraction:
    """Forward extraction for a time-indexed family.

    [C_k]^0 = alpha(E_k), [E_k]^i = E_k /\\ beta^-1([C_{k+1}]^{i-1}),
    [C_k]^i = alpha([E_k]^i). Index k gets a chain of length k0 + depth - k + 1;
    it is stabilized at i when [E_k]^{i+1} = [E_k]^i.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    last = k0 + depth
    equations = {k: seq[k] for k in range(k0, last + 1)}
    for E_k in equations.values():
        _require_affine(E_k)

    E_sets: Dict[int, List[AffineSubspace]] = {}
    C_sets: Dict[int, List[AffineSubspace]] = {}
    for k, E_k in equations.items():
        E_sets[k] = [E_k.subspace]
        C_sets[k] = [affine_image(E_k.subspace, E_k.source_map)]
    for i in range(1, depth + 1):
        for k in range(k0, last - i + 1):
            E_k = equations[k]
            E_i = affine_intersect(E_k.subspace, affine_preimage(C_sets[k + 1][i - 1], E_k.target_map))
            E_sets[k].append(E_i)
            C_sets[k].append(affine_image(E_i, E_k.source_map))

    result = SequenceExtraction(k0=k0, depth=depth)
    for k in range(k0, last + 1):
        chain = E_sets[k]
        report = ChainReport(mode=ChainMode.FORWARD, C=C_sets[k], E=chain,
                             max_iter=len(chain) - 1, label=f"{equations[k].name}_{k}")
        for i in range(len(chain) - 1):
            if affine_equal(chain[i + 1], chain[i]):
                report.stabilization_index = i
                break
        report.extracted = chain[report.stabilization_index] if report.stabilized else chain[-1]
        result.reports[k] = report
    return result
