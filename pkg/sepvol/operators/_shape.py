from dataclasses import dataclass

MAX_DIM = 256


@dataclass(frozen=True)
class FactorShape:
    """
    Factor structure of ``ℋ = (ℂᴰ)^{⊗N}``.

    Parameters
    ----------
    D
        Local dimension of every factor.
    N
        Number of factors.
    """

    D: int
    N: int = 1

    def __post_init__(self):
        if int(self.D) != self.D or self.D < 1:
            raise ValueError(f"D must be a positive integer, got {self.D}.")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}.")
        object.__setattr__(self, "D", int(self.D))
        object.__setattr__(self, "N", int(self.N))
        if self.d > MAX_DIM:
            raise ValueError(
                f"d = {self.D}^{self.N} = {self.d} exceeds the supported dimension {MAX_DIM}."
            )

    @property
    def d(self) -> int:
        """Total dimension ``Dᴺ``."""
        return self.D**self.N

    @property
    def n(self) -> int:
        """Real dimension of the trace-one affine hyperplane, ``d² − 1``."""
        return self.d**2 - 1

    @property
    def factor_dims(self):
        return (self.D,) * self.N

    def tensor(self, other: "FactorShape") -> "FactorShape":
        """Concatenate factor structures; both sides must share the local dimension."""
        if other.D != self.D:
            raise ValueError(
                f"Cannot tensor shapes with local dimensions {self.D} and {other.D}."
            )
        return FactorShape(self.D, self.N + other.N)

    @classmethod
    def flat(cls, d: int) -> "FactorShape":
        """A single factor of dimension ``d``."""
        return cls(d, 1)
