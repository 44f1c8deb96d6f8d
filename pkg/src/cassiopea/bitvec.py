"""Fixed-width two's-complement bitvectors."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BitVec:
    """An unsigned value in ``[0, 2**width)`` tagged with its width.

    Arithmetic wraps modulo ``2**width``. Signed views are computed on demand.
    Both operands of a binary operation must share a width.
    """

    width: int
    value: int

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"bitvector width must be positive, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def wrap(cls, width: int, value: int) -> "BitVec":
        return cls(width, value & ((1 << width) - 1))

    @classmethod
    def from_literal(cls, text: str) -> "BitVec":
        """Parse ``0b...`` (one bit per digit) or ``0x...`` (four bits per digit)."""
        prefix, digits = text[:2].lower(), text[2:]
        if not digits:
            raise ValueError(f"empty bitvector literal {text!r}")
        if prefix == "0b":
            return cls(len(digits), int(digits, 2))
        if prefix == "0x":
            return cls(4 * len(digits), int(digits, 16))
        raise ValueError(f"not a bitvector literal: {text!r}")

    @property
    def mask(self) -> int:
        return (1 << self.width) - 1

    def to_uint(self) -> int:
        return self.value

    def to_sint(self) -> int:
        if self.value >> (self.width - 1):
            return self.value - (1 << self.width)
        return self.value

    def literal(self) -> str:
        """Shortest literal that reparses to exactly this width and value."""
        if self.width % 4 == 0:
            return "0x" + format(self.value, "0{}x".format(self.width // 4))
        return "0b" + format(self.value, "0{}b".format(self.width))

    def __str__(self) -> str:
        return self.literal()

    def _same(self, other: "BitVec") -> None:
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")

    # arithmetic
    def add(self, other: "BitVec") -> "BitVec":
        self._same(other)
        return BitVec.wrap(self.width, self.value + other.value)

    def sub(self, other: "BitVec") -> "BitVec":
        self._same(other)
        return BitVec.wrap(self.width, self.value - other.value)

    def mul(self, other: "BitVec") -> "BitVec":
        self._same(other)
        return BitVec.wrap(self.width, self.value * other.value)

    def udiv(self, other: "BitVec") -> "BitVec | None":
        """Unsigned quotient, or None when dividing by zero."""
        self._same(other)
        if other.value == 0:
            return None
        return BitVec(self.width, self.value // other.value)

    def neg(self) -> "BitVec":
        return BitVec.wrap(self.width, -self.value)

    # bitwise
    def bnot(self) -> "BitVec":
        return BitVec(self.width, self.value ^ self.mask)

    def band(self, other: "BitVec") -> "BitVec":
        self._same(other)
        return BitVec(self.width, self.value & other.value)

    def bor(self, other: "BitVec") -> "BitVec":
        self._same(other)
        return BitVec(self.width, self.value | other.value)

    def bxor(self, other: "BitVec") -> "BitVec":
        self._same(other)
        return BitVec(self.width, self.value ^ other.value)

    # shifts take the amount as an unsigned bitvector of the same width
    def shl(self, amount: "BitVec") -> "BitVec":
        self._same(amount)
        if amount.value >= self.width:
            return BitVec(self.width, 0)
        return BitVec.wrap(self.width, self.value << amount.value)

    def lshr(self, amount: "BitVec") -> "BitVec":
        self._same(amount)
        if amount.value >= self.width:
            return BitVec(self.width, 0)
        return BitVec(self.width, self.value >> amount.value)

    def ashr(self, amount: "BitVec") -> "BitVec":
        self._same(amount)
        shift = min(amount.value, self.width - 1)
        return BitVec.wrap(self.width, self.to_sint() >> shift)

    # comparisons
    def ult(self, other: "BitVec") -> bool:
        self._same(other)
        return self.value < other.value

    def ule(self, other: "BitVec") -> bool:
        self._same(other)
        return self.value <= other.value

    def slt(self, other: "BitVec") -> bool:
        self._same(other)
        return self.to_sint() < other.to_sint()

    def sle(self, other: "BitVec") -> bool:
        self._same(other)
        return self.to_sint() <= other.to_sint()

    # extraction
    def bit(self, index: int) -> "BitVec":
        if not 0 <= index < self.width:
            raise IndexError(f"bit {index} out of range for width {self.width}")
        return BitVec(1, (self.value >> index) & 1)

    def slice(self, lo: int, hi: int) -> "BitVec":
        """Bits ``lo`` (inclusive) to ``hi`` (exclusive), counted from the LSB."""
        if not 0 <= lo < hi <= self.width:
            raise IndexError(f"slice [{lo}:{hi}] out of range for width {self.width}")
        return BitVec(hi - lo, (self.value >> lo) & ((1 << (hi - lo)) - 1))

    def resize(self, width: int) -> "BitVec":
        """Zero-extend or truncate to ``width`` bits."""
        return BitVec.wrap(width, self.value)
