"""Subspaces of a coordinate space as canonical reduced-echelon row spans,
and strictly decreasing flags.

Canonical echelon bases make subspace equality, and everything derived from
it (flags, broken quadric canonical forms), a plain tuple comparison.
"""

from __future__ import annotations

from .linalg import Matrix


class Subspace:
    __slots__ = ("ambient", "basis")

    def __init__(self, ambient: int, rows):
        """Span of the given rows inside k^ambient; basis is stored in RREF."""
        self.ambient = ambient
        m = Matrix(rows) if not isinstance(rows, Matrix) else rows
        if m.nrows:
            if m.ncols != ambient:
                raise ValueError("ambient dimension mismatch")
            self.basis = m.row_space()
        else:
            self.basis = Matrix(())

    @classmethod
    def full(cls, n):
        return cls(n, Matrix.identity(n))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @property
    def dim(self):
        return self.basis.nrows

    def contains_vector(self, v):
        return Subspace(self.ambient, self.basis.stack(Matrix((v,)))).dim == self.dim

    def contains(self, other: "Subspace"):
        return Subspace(self.ambient, self.basis.stack(other.basis)).dim == self.dim

    def sum(self, other: "Subspace"):
        return Subspace(self.ambient, self.basis.stack(other.basis))

    def annihilator(self) -> "Subspace":
        """{phi : phi(v) = 0 for all v in self}, in the dual coordinates."""
        if self.dim == 0:
            return Subspace.full(self.ambient)
        return Subspace(self.ambient, self.basis.right_kernel())

    def intersect(self, other: "Subspace"):
        return self.annihilator().sum(other.annihilator()).annihilator()

    def coords_of(self, v):
        """Coordinates of v in the echelon basis; None if v is outside."""
        if self.dim == 0:
            return () if all(a == 0 for a in v) else None
        return self.basis.solve_left(v)

    def complement_of(self, smaller: "Subspace") -> Matrix:
        """Canonical complement of `smaller` inside self, as basis rows.

        The complement is spanned by the echelon basis rows of self whose
        index is not a pivot of `smaller` written in self-coordinates.
        """
        if not self.contains(smaller):
            raise ValueError("complement_of: not a subspace")
        if smaller.dim == 0:
            return self.basis
        coords = Matrix(tuple(self.coords_of(r) for r in smaller.basis.rows))
        _, pivots = coords.rref()
        keep = [i for i in range(self.dim) if i not in pivots]
        return Matrix(tuple(self.basis.rows[i] for i in keep))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient})"


class Flag:
    """Strictly decreasing chain of subspaces from the full space to zero."""

    __slots__ = ("ambient", "steps")

    def __init__(self, subspaces):
        subs = tuple(subspaces)
        if not subs:
            raise ValueError("empty flag")
        self.ambient = subs[0].ambient
        if subs[0].dim != self.ambient:
            raise ValueError("flag must start at the full space")
        if subs[-1].dim != 0:
            raise ValueError("flag must end at zero")
        for big, small in zip(subs, subs[1:]):
            if big.dim <= small.dim or not big.contains(small):
                raise ValueError("flag must be strictly decreasing")
        self.steps = subs

    @property
    def num_steps(self):
        return len(self.steps) - 1

    def complements(self):
        """Canonical complement rows C_j of F_{j+1} inside F_j, for each step."""
        return tuple(self.steps[j].complement_of(self.steps[j + 1]) for j in range(self.num_steps))

    def __eq__(self, other):
        if not isinstance(other, Flag):
            return NotImplemented
        return self.steps == other.steps

    def __hash__(self):
        return hash(self.steps)

    def __repr__(self):
        dims = " > ".join(str(s.dim) for s in self.steps)
        return f"Flag({dims})"
