"""Physical constants, atom/geometry records and the dimensionless reduction.

Internal unit system: Hartree atomic units with the Gaussian electromagnetic
convention (hbar = e = m_e = 1, c = 1/alpha).  In these units the Bohr radius
is 1 and all quantities of interest stay within a few orders of magnitude of
unity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, FrequencyMismatchError

FINE_STRUCTURE = 7.2973525693e-3  # CODATA 2018

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants in a consistent unit system."""

    hbar: float = 1.0
    c: float = 1.0 / FINE_STRUCTURE
    fine_structure: float = FINE_STRUCTURE
    bohr_radius: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "c", "fine_structure", "bohr_radius"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise DomainError(f"constant {name} must be finite and positive, got {v}")
        # alpha = e^2/(hbar c); with e = 1 this pins fine_structure to 1/(hbar c)
        if abs(self.fine_structure * self.hbar * self.c - 1.0) > 1e-9:
            raise DomainError("inconsistent constants: fine_structure != e^2/(hbar c)")


ATOMIC = PhysicalConstants()


def _as_vec3(v, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise DomainError(f"{name} must be a real 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class TwoLevelAtom:
    """A two-level atom: transition frequency and a real transition dipole."""

    omega0: float
    dipole: np.ndarray

    def __post_init__(self):
        if not (np.isfinite(self.omega0) and self.omega0 > 0):
            raise DomainError(f"omega0 must be finite and positive, got {self.omega0}")
        d = _as_vec3(self.dipole, "dipole")
        d.setflags(write=False)
        object.__setattr__(self, "dipole", d)

    @property
    def dipole_magnitude(self) -> float:
        return float(np.linalg.norm(self.dipole))

    @property
    def orientation(self) -> np.ndarray:
        """Unit dipole direction; x-hat by convention for a vanishing dipole."""
        d = self.dipole_magnitude
        if d == 0.0:
            return np.array([1.0, 0.0, 0.0])
        return self.dipole / d

    def wavenumber(self, constants: PhysicalConstants = ATOMIC) -> float:
        """Transition wavenumber k0 = omega0 / c."""
        return self.omega0 / constants.c


def hydrogen_1s2p(orientation=(1.0, 0.0, 0.0)) -> TwoLevelAtom:
    """Hydrogen 1s-2p preset: Lyman-alpha frequency and the textbook dipole.

    omega0 = 3/8 Hartree/hbar, |d| = 2^7 sqrt(2)/3^5 e*a0 (the 1s->2p matrix
    element of the position operator).
    """
    n = _as_vec3(orientation, "orientation")
    norm = np.linalg.norm(n)
    if norm == 0:
        raise DomainError("orientation must be nonzero")
    d = 128.0 * np.sqrt(2.0) / 243.0
    return TwoLevelAtom(omega0=0.375, dipole=d * n / norm)


@dataclass(frozen=True, eq=False)
class PairConfiguration:
    """Dimensionless description of the two-atom geometry.

    x     : k0 * R, separation in units of the inverse transition wavenumber
    n_a   : unit dipole orientation of atom A
    n_b   : unit dipole orientation of atom B
    r_hat : unit vector from B to A
    mu    : coupling strength |d_A| |d_B| k0^3 / (hbar omega0)
    """

    x: float
    n_a: np.ndarray
    n_b: np.ndarray
    r_hat: np.ndarray
    mu: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and self.x > 0):
            raise DomainError(f"x must be finite and positive, got {self.x}")
        if not (np.isfinite(self.mu) and self.mu >= 0):
            raise DomainError(f"mu must be finite and nonnegative, got {self.mu}")
        for name in ("n_a", "n_b", "r_hat"):
            v = _as_vec3(getattr(self, name), name)
            if abs(np.linalg.norm(v) - 1.0) > _UNIT_TOL:
                raise DomainError(f"{name} must be a unit vector to 1e-12")
            v.setflags(write=False)
            object.__setattr__(self, name, v)

    @property
    def cos_ab(self) -> float:
        """n_a . n_b"""
        return float(self.n_a @ self.n_b)

    @property
    def proj_product(self) -> float:
        """(n_a . r_hat)(n_b . r_hat)"""
        return float((self.n_a @ self.r_hat) * (self.n_b @ self.r_hat))


def pair_from_alignment(x: float, mu: float, cos_ab: float = 1.0,
                        proj_product: float = 0.0) -> PairConfiguration:
    """Build a configuration realizing given orientation invariants.

    Convenience for sweeps: places the separation along z and chooses
    coplanar dipoles with the requested n_a.n_b and projection product.
    Requires a geometry consistent with unit vectors.
    """
    r_hat = np.array([0.0, 0.0, 1.0])
    if abs(cos_ab) > 1:
        raise DomainError("cos_ab must lie in [-1, 1]")
    if abs(proj_product) < 1e-15:
        if abs(cos_ab - 1.0) < 1e-15:
            n_a = np.array([1.0, 0.0, 0.0])
            n_b = n_a.copy()
        else:
            n_a = np.array([1.0, 0.0, 0.0])
            s = np.sqrt(max(0.0, 1.0 - cos_ab**2))
            n_b = np.array([cos_ab, s, 0.0])
        return PairConfiguration(x=x, n_a=n_a, n_b=n_b, r_hat=r_hat, mu=mu)
    ca = np.sqrt(abs(proj_product))
    cb = np.sign(proj_product) * ca
    sa = np.sqrt(1 - ca * ca)
    sb = np.sqrt(1 - cb * cb)
    n_a = np.array([sa, 0.0, ca])
    if sa * sb == 0:
        if abs(cos_ab - ca * cb) > 1e-12:
            raise DomainError("requested alignment is not realizable")
        n_b = np.array([sb, 0.0, cb])
    else:
        cphi = (cos_ab - ca * cb) / (sa * sb)
        if abs(cphi) > 1 + 1e-12:
            raise DomainError("requested alignment is not realizable")
        cphi = float(np.clip(cphi, -1.0, 1.0))
        sphi = np.sqrt(1 - cphi * cphi)
        n_b = np.array([sb * cphi, sb * sphi, cb])
    return PairConfiguration(x=x, n_a=n_a, n_b=n_b, r_hat=r_hat, mu=mu)


def reduce(atom_a: TwoLevelAtom, atom_b: TwoLevelAtom, separation,
           constants: PhysicalConstants = ATOMIC) -> PairConfiguration:
    """Reduce a dimensional two-atom setup to its dimensionless configuration.

    The reduction is exact: x = k0 |R|, mu = |d_A||d_B| k0^3/(hbar omega0),
    orientations are passed through unchanged.

    Raises FrequencyMismatchError unless the atoms share omega0 to a relative
    1e-9, and DomainError for zero separation.
    """
    if abs(atom_a.omega0 - atom_b.omega0) > 1e-9 * abs(atom_a.omega0):
        raise FrequencyMismatchError(
            f"atoms must share one transition frequency "
            f"(got {atom_a.omega0} and {atom_b.omega0})")
    sep = _as_vec3(separation, "separation")
    r = float(np.linalg.norm(sep))
    if r == 0.0:
        raise DomainError("separation must be nonzero")
    k0 = atom_a.wavenumber(constants)
    mu = (atom_a.dipole_magnitude * atom_b.dipole_magnitude * k0**3
          / (constants.hbar * atom_a.omega0))
    return PairConfiguration(
        x=k0 * r,
        n_a=atom_a.orientation,
        n_b=atom_b.orientation,
        r_hat=sep / r,
        mu=mu,
    )


class Validity(enum.Enum):
    """Status of the second-order (weak-coupling) expansion."""

    OK = "OK"
    WARN = "WARN"
    INVALID = "INVALID"


@dataclass(frozen=True)
class ValidityReport:
    flag: Validity
    margin: float


# Expansion-parameter thresholds; a predicted concurrence above 1 certifies
# breakdown since concurrence is bounded by 1.
_MARGIN_OK = 0.1
_MARGIN_WARN = 1.0


def perturbative_validity(cfg: PairConfiguration) -> ValidityReport:
    """Check whether the weak-coupling expansion is trustworthy.

    The margin is the predicted concurrence magnitude from the full formula;
    OK for margin <= 0.1, WARN up to 1, INVALID above 1.
    """
    from .entanglement import concurrence_raw

    margin = abs(concurrence_raw(cfg))
    if margin <= _MARGIN_OK:
        flag = Validity.OK
    elif margin <= _MARGIN_WARN:
        flag = Validity.WARN
    else:
        flag = Validity.INVALID
    return ValidityReport(flag=flag, margin=margin)
