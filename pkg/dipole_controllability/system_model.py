# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
"""
Model of a dipole-coupled N-level system H = H0 + f(t) H1:
the system specification, its derived parameters (spacings mu_n, harmonic
parameters v_n, trace of H0), skew-Hermitian matrices and the standard su(N) basis.

All indices in the public API are 1-based, as in the physics notation
(levels E_1..E_N, dipoles d_1..d_{N-1}, with d_0 = d_N = 0).
"""
import math
from functools import lru_cache
from itertools import accumulate

import numpy as np

from .base import ControllabilityException, Tolerances


class InvalidSpecException(ControllabilityException):
    """
    The system specification violates its invariants.
    """
    pass


class IndexOutOfRangeException(ControllabilityException):
    """
    A basis element was requested with indices outside 1..N.
    """
    pass


class NotSkewHermitianException(ControllabilityException):
    """
    A matrix that should be skew-Hermitian is not.
    """
    pass


class SystemSpec:
    """
    Energy levels E_1 <= ... <= E_N and transition dipoles d_1..d_{N-1}.
    Immutable after construction.
    """
    ##
    # @param self The SystemSpec to construct.
    # @param levels Sequence of N real energies, non-decreasing.
    # @param dipoles Sequence of N-1 real transition moments (zeros allowed).
    # @param name Optional name of the system.
    def __init__(self, levels, dipoles, name=None):
        levels = tuple(float(e) for e in levels)
        dipoles = tuple(float(d) for d in dipoles)
        N = len(levels)
        if N < 2:
            raise InvalidSpecException('At least 2 levels are required, got %d' % N)
        if len(dipoles) != N - 1:
            raise InvalidSpecException('Expected %d dipoles for %d levels, got %d' % (N - 1, N, len(dipoles)))
        for label, values in (('level', levels), ('dipole', dipoles)):
            for i, value in enumerate(values):
                if not math.isfinite(value):
                    raise InvalidSpecException('%s %d is not finite: %r' % (label, i + 1, value))
        for n in range(N - 1):
            if levels[n + 1] < levels[n]:
                raise InvalidSpecException('Levels must be sorted ascending: E_%d = %r > E_%d = %r'
                                           % (n + 1, levels[n], n + 2, levels[n + 1]))
        self.levels_ = levels
        self.dipoles_ = dipoles
        self.name_ = name

    ##
    # @param spacings N-1 non-negative spacings mu_n.
    # @param groundEnergy E_1.
    # @param dipoles N-1 dipoles.
    # @param name Optional name.
    # @return The SystemSpec with levels E_1 = groundEnergy, E_{n+1} = E_n + mu_n.
    @staticmethod
    def fromSpacings(spacings, groundEnergy, dipoles, name=None):
        spacings = [float(mu) for mu in spacings]
        for n, mu in enumerate(spacings):
            if mu < 0:
                raise InvalidSpecException('Spacing mu_%d is negative: %r' % (n + 1, mu))
        levels = list(accumulate([float(groundEnergy)] + spacings))
        return SystemSpec(levels, dipoles, name)

    def getN(self):
        return len(self.levels_)

    def getLevels(self):
        return self.levels_

    def getDipoles(self):
        return self.dipoles_

    def getName(self):
        return self.name_

    ##
    # @param self The SystemSpec.
    # @param n 1-based level index.
    # @return E_n.
    def getLevel(self, n):
        return self.levels_[n - 1]

    ##
    # @param self The SystemSpec.
    # @param n Dipole index in 0..N.
    # @return d_n, with the convention d_0 = d_N = 0.
    def getDipole(self, n):
        if n <= 0 or n >= self.getN():
            return 0.0
        return self.dipoles_[n - 1]

    ##
    # @param self The SystemSpec.
    # @param shift Constant added to every level.
    # @return A new SystemSpec with levels E_n + shift.
    def withShiftedLevels(self, shift):
        return SystemSpec([e + shift for e in self.levels_], self.dipoles_, self.name_)

    ##
    # @param self The SystemSpec.
    # @param factor Constant multiplying every dipole.
    # @return A new SystemSpec with dipoles factor * d_n.
    def withScaledDipoles(self, factor):
        return SystemSpec(self.levels_, [factor * d for d in self.dipoles_], self.name_)

    def __eq__(self, other):
        if not isinstance(other, SystemSpec):
            return NotImplemented
        return (self.levels_, self.dipoles_, self.name_) == (other.levels_, other.dipoles_, other.name_)

    def __hash__(self):
        return hash((self.levels_, self.dipoles_, self.name_))

    def __repr__(self):
        return 'SystemSpec(levels=%r, dipoles=%r, name=%r)' % (list(self.levels_), list(self.dipoles_), self.name_)


def _equalWithin(a, b, eps, scale, floor=0.0):
    return abs(a - b) <= eps * scale + floor


def _isFragile(a, b, eps, scale, floor=0.0):
    bound = eps * scale + floor
    return bound < abs(a - b) <= Tolerances.FRAGILITY_FACTOR * bound


class DerivedParams:
    """
    Spacings mu_n = E_{n+1} - E_n, harmonic parameters
    v_n = 2 d_n^2 - d_{n-1}^2 - d_{n+1}^2 and Tr(H0), with the tolerance-aware
    comparisons every criterion uses.
    """
    ##
    # @param self The DerivedParams to construct.
    # @param spec A valid SystemSpec.
    # @param epsParam Relative tolerance for all scalar equality tests.
    def __init__(self, spec, epsParam):
        if epsParam is None or not math.isfinite(epsParam) or epsParam <= 0:
            raise InvalidSpecException('eps_param must be a positive finite real, got %r' % (epsParam,))
        N = spec.getN()
        levels = spec.getLevels()
        self.spec_ = spec
        self.epsParam_ = float(epsParam)
        self.mu_ = tuple(levels[n + 1] - levels[n] for n in range(N - 1))
        self.v_ = tuple(2.0 * spec.getDipole(n) ** 2 - spec.getDipole(n - 1) ** 2 - spec.getDipole(n + 1) ** 2
                        for n in range(1, N))
        self.traceH0_ = math.fsum(levels)
        self.traceScale_ = math.fsum(abs(e) for e in levels)
        #Spacing tests do not depend on a uniform energy offset, apart from the round-off floor
        self.muScale_ = max(abs(mu) for mu in self.mu_)
        self.muFloor_ = Tolerances.ROUNDOFF_FACTOR * max(abs(e) for e in levels)
        self.dipoleScale_ = max(abs(d) for d in spec.getDipoles())
        self.vScale_ = self.dipoleScale_ ** 2

    def getSpec(self):
        return self.spec_

    def getN(self):
        return self.spec_.getN()

    def getEpsParam(self):
        return self.epsParam_

    def getMu(self):
        return self.mu_

    def getV(self):
        return self.v_

    def getTraceH0(self):
        return self.traceH0_

    ##
    # @param self The DerivedParams.
    # @param n 1-based spacing index.
    # @return mu_n.
    def muAt(self, n):
        return self.mu_[n - 1]

    ##
    # @param self The DerivedParams.
    # @param n 1-based index.
    # @return v_n.
    def vAt(self, n):
        return self.v_[n - 1]

    def muIsZero(self, n):
        return _equalWithin(self.muAt(n), 0.0, self.epsParam_, self.muScale_, self.muFloor_)

    def muEqual(self, m, n):
        return _equalWithin(self.muAt(m), self.muAt(n), self.epsParam_, self.muScale_, self.muFloor_)

    def allMuZero(self):
        return all(self.muIsZero(n) for n in range(1, self.getN()))

    ##
    # @param self The DerivedParams.
    # @return True iff all spacings are equal within eps_param.
    def isEquallySpaced(self):
        return all(self.muEqual(1, n) for n in range(2, self.getN()))

    ##
    # @param self The DerivedParams.
    # @param n Dipole index in 0..N (boundaries are zero).
    # @return True iff |d_n| <= eps_param * max|d|.
    def dipoleIsZero(self, n):
        return _equalWithin(abs(self.spec_.getDipole(n)), 0.0, self.epsParam_, self.dipoleScale_)

    ##
    # @param self The DerivedParams.
    # @param m Dipole index in 0..N.
    # @param n Dipole index in 0..N.
    # @return True iff d_m = +-d_n within eps_param.
    def dipolesEqualUpToSign(self, m, n):
        return _equalWithin(abs(self.spec_.getDipole(m)), abs(self.spec_.getDipole(n)),
                            self.epsParam_, self.dipoleScale_)

    def vIsZero(self, n):
        return _equalWithin(self.vAt(n), 0.0, self.epsParam_, self.vScale_)

    def vEqual(self, m, n):
        return _equalWithin(self.vAt(m), self.vAt(n), self.epsParam_, self.vScale_)

    def allVEqual(self):
        return all(self.vEqual(1, n) for n in range(2, self.getN()))

    ##
    # @param self The DerivedParams.
    # @return True iff |Tr(H0)| <= eps_param * sum |E_n|.
    def traceIsZero(self):
        return abs(self.traceH0_) <= self.epsParam_ * self.traceScale_

    ##
    # @param self The DerivedParams.
    # @return Equality classes of the spacings, as lists of 1-based indices.
    def muClasses(self):
        return self.__classes(self.muEqual)

    ##
    # @param self The DerivedParams.
    # @return Equality classes of the v_n, as lists of 1-based indices.
    def vClasses(self):
        return self.__classes(self.vEqual)

    def __classes(self, equal):
        classes = []
        for n in range(1, self.getN()):
            for aClass in classes:
                if equal(aClass[0], n):
                    aClass.append(n)
                    break
            else:
                classes.append([n])
        return classes

    ##
    # @param self The DerivedParams.
    # @return Descriptions of the comparisons whose outcome sits within
    #         FRAGILITY_FACTOR * eps_param of the equality boundary.
    def fragileComparisons(self):
        eps = self.epsParam_
        N = self.getN()
        notes = []
        for m in range(1, N):
            if _isFragile(self.muAt(m), 0.0, eps, self.muScale_, self.muFloor_):
                notes.append('mu_%d = 0' % m)
            for n in range(m + 1, N):
                if _isFragile(self.muAt(m), self.muAt(n), eps, self.muScale_, self.muFloor_):
                    notes.append('mu_%d = mu_%d' % (m, n))
        for m in range(1, N):
            dm = abs(self.spec_.getDipole(m))
            if _isFragile(dm, 0.0, eps, self.dipoleScale_):
                notes.append('d_%d = 0' % m)
            for n in range(m + 1, N):
                if _isFragile(dm, abs(self.spec_.getDipole(n)), eps, self.dipoleScale_):
                    notes.append('d_%d = +-d_%d' % (m, n))
        for m in range(1, N):
            if _isFragile(self.vAt(m), 0.0, eps, self.vScale_):
                notes.append('v_%d = 0' % m)
            for n in range(m + 1, N):
                if _isFragile(self.vAt(m), self.vAt(n), eps, self.vScale_):
                    notes.append('v_%d = v_%d' % (m, n))
        if _isFragile(self.traceH0_, 0.0, eps, self.traceScale_):
            notes.append('Tr(H0) = 0')
        return notes


##
# @param spec A valid SystemSpec.
# @param epsParam Relative tolerance for scalar equality tests.
# @return The DerivedParams of spec.
def deriveParams(spec, epsParam=Tolerances.DEFAULT_EPS_PARAM):
    """
    Derive mu_n, v_n and Tr(H0) from a system specification.
    """
    return DerivedParams(spec, epsParam)


@lru_cache(maxsize=None)
def _upperIndices(N):
    rows, cols = np.triu_indices(N, k=1)
    rows.flags.writeable = False
    cols.flags.writeable = False
    return rows, cols


class SkewHermMatrix:
    """
    N x N skew-Hermitian matrix (A^dagger = -A), immutable.

    The canonical real vectorization has N^2 entries: the imaginary parts of
    the diagonal, then the real parts of the strict upper triangle (row-major),
    then the imaginary parts of the strict upper triangle.
    """
    #Absolute skewness accepted from callers, relative to the largest entry
    SKEW_TOLERANCE = 1e-12

    ##
    # @param self The SkewHermMatrix to construct.
    # @param entries Square complex array, skew-Hermitian.
    def __init__(self, entries):
        entries = np.array(entries, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise NotSkewHermitianException('Expected a square matrix, got shape %r' % (entries.shape,))
        magnitude = max(1.0, float(np.max(np.abs(entries))))
        skewness = float(np.max(np.abs(entries + entries.conj().T)))
        if skewness > SkewHermMatrix.SKEW_TOLERANCE * magnitude:
            raise NotSkewHermitianException('Matrix is not skew-Hermitian (|A + A^dagger| = %g)' % skewness)
        entries.flags.writeable = False
        self.entries_ = entries

    ##
    # @param matrix Any square complex array C.
    # @return The skew-Hermitian part (C - C^dagger) / 2.
    @staticmethod
    def fromMatrix(matrix):
        matrix = np.asarray(matrix, dtype=np.complex128)
        return SkewHermMatrix((matrix - matrix.conj().T) / 2)

    ##
    # @param vector Canonical real vectorization of length N^2.
    # @param N Matrix size.
    # @return The SkewHermMatrix whose vectorization is vector.
    @staticmethod
    def fromVector(vector, N):
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (N * N,):
            raise NotSkewHermitianException('Expected a vector of length %d, got shape %r' % (N * N, vector.shape))
        rows, cols = _upperIndices(N)
        K = len(rows)
        entries = np.zeros((N, N), dtype=np.complex128)
        diagonal = np.arange(N)
        entries.imag[diagonal, diagonal] = vector[:N]
        entries.real[rows, cols] = vector[N:N + K]
        entries.imag[rows, cols] = vector[N + K:]
        entries.real[cols, rows] = -vector[N:N + K]
        entries.imag[cols, rows] = vector[N + K:]
        return SkewHermMatrix(entries)

    ##
    # @param N Matrix size.
    # @return i times the identity.
    @staticmethod
    def identity(N):
        return SkewHermMatrix(1j * np.eye(N))

    ##
    # @param N Matrix size.
    # @return The zero matrix.
    @staticmethod
    def zeros(N):
        return SkewHermMatrix(np.zeros((N, N)))

    def getDimension(self):
        return self.entries_.shape[0]

    ##
    # @param self The SkewHermMatrix.
    # @return Read-only complex array with the entries.
    def getEntries(self):
        return self.entries_

    ##
    # @param self The SkewHermMatrix.
    # @return Canonical real vectorization (length N^2).
    def vectorize(self):
        N = self.getDimension()
        rows, cols = _upperIndices(N)
        upper = self.entries_[rows, cols]
        return np.concatenate((np.diagonal(self.entries_).imag, upper.real, upper.imag))

    def norm(self):
        """
        Frobenius norm.
        """
        return float(np.linalg.norm(self.entries_))

    def trace(self):
        return complex(np.trace(self.entries_))

    def isZero(self):
        return not np.any(self.entries_)

    ##
    # @param self The SkewHermMatrix.
    # @param other Another SkewHermMatrix.
    # @param atol Absolute tolerance per entry.
    # @return True iff every entry differs by at most atol.
    def isClose(self, other, atol=1e-12):
        if self.getDimension() != other.getDimension():
            return False
        return bool(np.allclose(self.entries_, other.entries_, rtol=0.0, atol=atol))

    def __add__(self, other):
        return SkewHermMatrix(self.entries_ + other.entries_)

    def __sub__(self, other):
        return SkewHermMatrix(self.entries_ - other.entries_)

    def __neg__(self):
        return SkewHermMatrix(-self.entries_)

    def __mul__(self, factor):
        if isinstance(factor, complex) or not np.isreal(factor):
            raise NotSkewHermitianException('Only real multiples of a skew-Hermitian matrix stay skew-Hermitian')
        return SkewHermMatrix(float(factor) * self.entries_)

    __rmul__ = __mul__

    def __repr__(self):
        return 'SkewHermMatrix(%r)' % (self.entries_.tolist(),)


##
# @param spec A valid SystemSpec.
# @return i H0 = diag(i E_1, ..., i E_N).
def buildH0(spec):
    return SkewHermMatrix(np.diag(1j * np.array(spec.getLevels())))


##
# @param spec A valid SystemSpec.
# @return i H1, tridiagonal with i d_n at (n, n+1) and (n+1, n).
def buildH1(spec):
    dipoles = 1j * np.array(spec.getDipoles())
    return SkewHermMatrix(np.diag(dipoles, 1) + np.diag(dipoles, -1))


class BasisKind:
    """
    Kinds of standard su(N) basis elements.
    """
    X = 'x'
    Y = 'y'
    H = 'h'


##
# @param kind BasisKind.X or BasisKind.Y.
# @param a 1-based row index.
# @param b 1-based column index, a != b (any order).
# @param N Matrix size.
# @return x_ab = e_ab - e_ba, or y_ab = i (e_ab + e_ba).
def offDiagonalElement(kind, a, b, N):
    """
    Basis element for an arbitrary ordered index pair, so that x_31 = -x_13
    can be written the way the sp(2) basis lists it.
    """
    if not (1 <= a <= N and 1 <= b <= N) or a == b:
        raise IndexOutOfRangeException('Invalid index pair (%d, %d) for N = %d' % (a, b, N))
    entries = np.zeros((N, N), dtype=np.complex128)
    if kind == BasisKind.X:
        entries[a - 1, b - 1] = 1.0
        entries[b - 1, a - 1] = -1.0
    elif kind == BasisKind.Y:
        entries[a - 1, b - 1] = 1j
        entries[b - 1, a - 1] = 1j
    else:
        raise IndexOutOfRangeException('Unknown off-diagonal basis kind %r' % (kind,))
    return SkewHermMatrix(entries)


##
# @param kind One of BasisKind.X, BasisKind.Y, BasisKind.H.
# @param n First index (1-based).
# @param n2 Second index, n < n2 <= N, for x and y; ignored for h.
# @param N Matrix size.
# @return The standard su(N) basis matrix x_{n n2}, y_{n n2} or h_n = i (e_nn - e_{n+1,n+1}).
def basisElement(kind, n, n2, N):
    if N < 2:
        raise IndexOutOfRangeException('Basis elements need N >= 2, got %d' % N)
    if kind == BasisKind.H:
        if not 1 <= n <= N - 1:
            raise IndexOutOfRangeException('h_n needs 1 <= n <= %d, got %d' % (N - 1, n))
        entries = np.zeros((N, N), dtype=np.complex128)
        entries[n - 1, n - 1] = 1j
        entries[n, n] = -1j
        return SkewHermMatrix(entries)
    if kind not in (BasisKind.X, BasisKind.Y):
        raise IndexOutOfRangeException('Unknown basis kind %r' % (kind,))
    if n2 is None or not 1 <= n < n2 <= N:
        raise IndexOutOfRangeException('%s needs 1 <= n < n2 <= %d, got (%r, %r)' % (kind, N, n, n2))
    return offDiagonalElement(kind, n, n2, N)
