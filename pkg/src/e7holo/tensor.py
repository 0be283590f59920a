"""Exact sparse multi-index arrays over the rationals."""

from fractions import Fraction

from .linalg import RowEchelon, ZERO


class SparseTensor:
    """Multi-index array with rational entries; zeros are never stored."""

    __slots__ = ("shape", "entries")

    def __init__(self, shape, entries=None):
        self.shape = tuple(shape)
        self.entries = {}
        if entries:
            for idx, val in entries.items():
                self[idx] = val

    def __getitem__(self, idx):
        return self.entries.get(idx, ZERO)

    def __setitem__(self, idx, val):
        if len(idx) != len(self.shape):
            raise IndexError(f"index {idx} has wrong arity for shape {self.shape}")
        for i, n in zip(idx, self.shape):
            if not 0 <= i < n:
                raise IndexError(f"index {idx} outside shape {self.shape}")
        if val:
            self.entries[idx] = Fraction(val)
        else:
            self.entries.pop(idx, None)

    def add_at(self, idx, val):
        if not val:
            return
        w = self.entries.get(idx, ZERO) + val
        if w:
            self.entries[idx] = w
        else:
            del self.entries[idx]

    def __iter__(self):
        return iter(self.entries.items())

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, SparseTensor)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self):
        return None  # mutable

    def scaled(self, factor):
        out = SparseTensor(self.shape)
        if factor:
            out.entries = {k: factor * v for k, v in self.entries.items()}
        return out

    def plus(self, other, factor=Fraction(1)):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = SparseTensor(self.shape)
        out.entries = dict(self.entries)
        for k, v in other.entries.items():
            out.add_at(k, factor * v)
        return out

    def flatten(self):
        """Dict keyed by the linear index (row-major)."""
        strides = [1] * len(self.shape)
        for i in range(len(self.shape) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.shape[i + 1]
        return {
            sum(i * s for i, s in zip(idx, strides)): v
            for idx, v in self.entries.items()
        }

    def __repr__(self):
        return f"SparseTensor(shape={self.shape}, nnz={len(self.entries)})"


class SubspaceBasis:
    """A list of linearly independent SparseTensor elements of one ambient space."""

    def __init__(self, ambient_shape, elements, check_independent=True):
        self.ambient_shape = tuple(ambient_shape)
        self.elements = list(elements)
        for el in self.elements:
            if el.shape != self.ambient_shape:
                raise ValueError("element shape differs from ambient shape")
        if check_independent and not self._independent():
            raise ValueError("basis elements are linearly dependent")

    def _independent(self):
        ech = RowEchelon()
        for el in self.elements:
            if not ech.add_row(el.flatten()):
                return False
        return True

    @property
    def dim(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim}, ambient={self.ambient_shape})"
