# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
"""
Real Lie algebra generated by skew-Hermitian matrices.

The closure is breadth-first: every element added in one generation is
commuted against the whole basis in the next one, and each commutator is
kept if its residual after projection on the current span exceeds eps_rank.
The span is tracked with an orthonormal basis (modified Gram-Schmidt with one
reorthogonalization pass) in coordinates where the Euclidean norm is the
Frobenius norm.
"""
import logging
import math
from functools import lru_cache

import numpy as np

from .base import AlgebraTag, ControllabilityException, Identification, Tolerances
from .classifier4 import fourLevelBasisChange, sp2Basis
from .system_model import SkewHermMatrix, _upperIndices

logger = logging.getLogger(__name__)


class DimensionMismatchException(ControllabilityException):
    """
    Matrices of different sizes were combined.
    """
    pass


class ZeroGeneratorsException(ControllabilityException):
    """
    The closure was asked for with no nonzero generator.
    """
    pass


@lru_cache(maxsize=None)
def _frobeniusWeights(N):
    offDiagonal = N * (N - 1)
    weights = np.concatenate((np.ones(N), np.full(offDiagonal, math.sqrt(2.0))))
    weights.flags.writeable = False
    return weights


def _toVectors(matrices, N):
    """
    Batch of N x N skew-Hermitian arrays -> Frobenius-isometric coordinates.
    """
    rows, cols = _upperIndices(N)
    diagonal = np.arange(N)
    upper = matrices[:, rows, cols]
    vectors = np.concatenate((matrices[:, diagonal, diagonal].imag, upper.real, upper.imag), axis=1)
    return vectors * _frobeniusWeights(N)


def _toMatrices(vectors, N):
    """
    Frobenius-isometric coordinates -> batch of N x N skew-Hermitian arrays.
    """
    plain = vectors / _frobeniusWeights(N)
    rows, cols = _upperIndices(N)
    K = len(rows)
    diagonal = np.arange(N)
    matrices = np.zeros((len(vectors), N, N), dtype=np.complex128)
    matrices.imag[:, diagonal, diagonal] = plain[:, :N]
    matrices.real[:, rows, cols] = plain[:, N:N + K]
    matrices.imag[:, rows, cols] = plain[:, N + K:]
    matrices.real[:, cols, rows] = -plain[:, N:N + K]
    matrices.imag[:, cols, rows] = plain[:, N + K:]
    return matrices


def _vectorOf(matrix):
    return matrix.vectorize() * _frobeniusWeights(matrix.getDimension())


class _OrthonormalSpan:
    """
    Growing orthonormal basis with residual-threshold rank decisions.
    """
    def __init__(self, N, capacity):
        self.N_ = N
        self.vectors_ = np.zeros((capacity, N * N))
        self.size_ = 0

    def size(self):
        return self.size_

    def isFull(self):
        return self.size_ == len(self.vectors_)

    def basis(self):
        return self.vectors_[:self.size_]

    def residual(self, vector):
        basis = self.basis()
        residual = vector - basis.T @ (basis @ vector)
        #one reorthogonalization pass
        return residual - basis.T @ (basis @ residual)

    ##
    # @param self The _OrthonormalSpan.
    # @param vector Candidate vector.
    # @param threshold Minimum residual norm for the candidate to be independent.
    # @return True if the candidate extended the span.
    def tryAdd(self, vector, threshold):
        if self.isFull():
            return False
        residual = self.residual(vector)
        residualNorm = np.linalg.norm(residual)
        if residualNorm <= threshold:
            return False
        self.vectors_[self.size_] = residual / residualNorm
        self.size_ += 1
        return True


##
# @param a SkewHermMatrix.
# @param b SkewHermMatrix of the same size.
# @return [a, b] = ab - ba.
def commutator(a, b):
    if a.getDimension() != b.getDimension():
        raise DimensionMismatchException('Cannot commute %dx%d and %dx%d matrices'
                                         % (a.getDimension(), a.getDimension(), b.getDimension(), b.getDimension()))
    A = a.getEntries()
    B = b.getEntries()
    return SkewHermMatrix.fromMatrix(A @ B - B @ A)


def _batchCommutators(left, right):
    """
    left (k, N, N), right (m, N, N) -> (k, m, N, N) skew-Hermitian commutators.
    """
    products = np.einsum('aij,bjk->abik', left, right) - np.einsum('bij,ajk->abik', right, left)
    return (products - np.conj(np.swapaxes(products, -1, -2))) / 2


##
# @param basis Orthonormal list of SkewHermMatrix (Frobenius inner product).
# @param m SkewHermMatrix.
# @param eps Relative tolerance.
# @return True iff the residual of m after projection on the span is at most eps * |m|. A zero m is contained.
def spanContains(basis, m, eps):
    norm = m.norm()
    if norm == 0:
        return True
    if not basis:
        return False
    N = m.getDimension()
    for element in basis:
        if element.getDimension() != N:
            raise DimensionMismatchException('Basis of %dx%d matrices cannot contain a %dx%d matrix'
                                             % (element.getDimension(), element.getDimension(), N, N))
    vectors = np.array([_vectorOf(element) for element in basis])
    vector = _vectorOf(m)
    residual = vector - vectors.T @ (vectors @ vector)
    residual = residual - vectors.T @ (vectors @ residual)
    return bool(np.linalg.norm(residual) <= eps * norm)


##
# @param matrices List of SkewHermMatrix of the same size.
# @param eps Relative residual below which a matrix is considered dependent.
# @return Orthonormal list of SkewHermMatrix spanning the same space.
def orthonormalize(matrices, eps=Tolerances.DEFAULT_EPS_RANK):
    if not matrices:
        return []
    N = matrices[0].getDimension()
    span = _OrthonormalSpan(N, N * N)
    for m in matrices:
        if m.getDimension() != N:
            raise DimensionMismatchException('All matrices must be %dx%d' % (N, N))
        norm = m.norm()
        if norm > 0:
            span.tryAdd(_vectorOf(m) / norm, eps)
    return [SkewHermMatrix(entries) for entries in _toMatrices(span.basis(), N)]


class LieClosureResult:
    """
    Outcome of a commutator closure: dimension, orthonormal basis,
    identity membership, identification and number of generations.
    """
    ##
    # @param self The LieClosureResult to construct.
    # @param N Matrix size.
    # @param vectors (dim, N^2) orthonormal rows in Frobenius-isometric coordinates.
    # @param generations Number of commutator passes performed.
    # @param epsRank Rank threshold used.
    def __init__(self, N, vectors, generations, epsRank):
        self.N_ = N
        self.vectors_ = np.array(vectors)
        self.vectors_.flags.writeable = False
        self.generations_ = generations
        self.epsRank_ = epsRank
        self.basis_ = [SkewHermMatrix(entries) for entries in _toMatrices(self.vectors_, N)]
        self.containsIdentity_ = spanContains(self.basis_, SkewHermMatrix.identity(N), epsRank)
        self.identification_ = identify(self.basis_, N, self.containsIdentity_)

    def getN(self):
        return self.N_

    def getDimension(self):
        return len(self.basis_)

    ##
    # @param self The LieClosureResult.
    # @return Orthonormal list of SkewHermMatrix spanning the algebra.
    def getBasis(self):
        return list(self.basis_)

    ##
    # @param self The LieClosureResult.
    # @return Read-only (dim, N^2) array; rows are the basis in coordinates
    #         whose Euclidean norm is the Frobenius norm.
    def getBasisVectors(self):
        return self.vectors_

    def containsIdentity(self):
        return self.containsIdentity_

    def getIdentification(self):
        return self.identification_

    def getGenerations(self):
        return self.generations_

    def getEpsRank(self):
        return self.epsRank_

    def __repr__(self):
        return 'LieClosureResult(N=%d, dimension=%d, identification=%s, generations=%d)' \
            % (self.N_, self.getDimension(), self.identification_, self.generations_)


##
# @param generators List of SkewHermMatrix of the same size, at least one nonzero.
# @param epsRank Residual threshold on unit-norm operands.
# @param maxDim Stop once this dimension is reached (defaults to N^2).
# @return The LieClosureResult of the generated real Lie algebra.
def closure(generators, epsRank=Tolerances.DEFAULT_EPS_RANK, maxDim=None):
    """
    Breadth-first commutator closure. Generators are normalized to unit
    Frobenius norm and zero generators are dropped; a pass commutes the
    elements added by the previous pass with every basis element and the loop
    ends when a pass adds nothing or the dimension reaches maxDim.
    """
    if not generators:
        raise ZeroGeneratorsException('No generators given')
    N = generators[0].getDimension()
    for g in generators:
        if g.getDimension() != N:
            raise DimensionMismatchException('Generators must all be %dx%d, got %dx%d'
                                             % (N, N, g.getDimension(), g.getDimension()))
    capacity = N * N if maxDim is None else max(1, min(maxDim, N * N))
    span = _OrthonormalSpan(N, capacity)
    nonzero = [g for g in generators if not g.isZero()]
    if not nonzero:
        raise ZeroGeneratorsException('All %d generators are zero' % len(generators))
    for g in nonzero:
        span.tryAdd(_vectorOf(g) / g.norm(), epsRank)

    generations = 0
    newStart = 0
    while newStart < span.size() and not span.isFull():
        end = span.size()
        generations += 1
        matrices = _toMatrices(span.basis()[:end], N)
        commutators = _batchCommutators(matrices[newStart:end], matrices)
        candidates = 0
        for a in range(end - newStart):
            #inside the new block only pairs (j < i) are needed
            limit = newStart + a
            vectors = _toVectors(commutators[a, :limit], N)
            for vector in vectors:
                candidates += 1
                span.tryAdd(vector, epsRank)
                if span.isFull():
                    break
            if span.isFull():
                break
        logger.debug('Closure generation %d: %d candidates, dimension %d -> %d',
                     generations, candidates, end, span.size())
        newStart = end

    result = LieClosureResult(N, span.basis().copy(), generations, epsRank)
    logger.debug('Closure finished: %r', result)
    return result


##
# @param result A LieClosureResult.
# @param eps Residual tolerance on unit-norm operands (defaults to the closure eps_rank).
# @return True iff every commutator of two basis elements lies in the span.
def verifyClosureCertificate(result, eps=None):
    eps = result.getEpsRank() if eps is None else eps
    dim = result.getDimension()
    if dim < 2:
        return True
    N = result.getN()
    vectors = np.asarray(result.getBasisVectors())
    matrices = _toMatrices(vectors, N)
    commutators = _batchCommutators(matrices, matrices)
    rows, cols = np.triu_indices(dim, k=1)
    candidates = _toVectors(commutators[rows, cols], N)
    residuals = candidates - (candidates @ vectors.T) @ vectors
    residuals = residuals - (residuals @ vectors.T) @ vectors
    return bool(np.all(np.linalg.norm(residuals, axis=1) <= eps))


#Structural comparison tolerance for the sp(2) span check
IDENTIFY_TOLERANCE = 1e-6


def _matchesSp2(basis, withIdentity):
    reference = sp2Basis()
    if withIdentity:
        reference.append(SkewHermMatrix.identity(4))
    reference = orthonormalize(reference)
    if len(reference) != len(basis):
        return False
    for sign in (1, -1):
        change = fourLevelBasisChange(sign)
        transformed = [SkewHermMatrix.fromMatrix(change.T @ m.getEntries() @ change) for m in basis]
        if all(spanContains(reference, m, IDENTIFY_TOLERANCE) for m in transformed):
            return True
    return False


##
# @param basis Orthonormal list of SkewHermMatrix spanning a closed algebra.
# @param N Matrix size.
# @param containsIdentity Whether i I is in the span (computed when None).
# @return The Identification of the algebra.
def identify(basis, N, containsIdentity=None):
    """
    Identification by dimension, identity membership and, for dimension 11
    (or 10 without identity) at N = 4, an explicit span comparison with
    sp(2) after the four-level basis change.
    """
    dim = len(basis)
    if containsIdentity is None:
        containsIdentity = spanContains(basis, SkewHermMatrix.identity(N), Tolerances.DEFAULT_EPS_RANK)
    if dim == N * N:
        return Identification(AlgebraTag.U_N, dim, N)
    if dim == N * N - 1 and not containsIdentity:
        return Identification(AlgebraTag.SU_N, dim, N)
    if N == 4 and dim == 11 and containsIdentity and _matchesSp2(basis, True):
        return Identification(AlgebraTag.SP2_PLUS_U1, dim, N)
    if N == 4 and dim == 10 and not containsIdentity and _matchesSp2(basis, False):
        return Identification(AlgebraTag.SP2, dim, N)
    if dim == 4 and N > 2:
        return Identification(AlgebraTag.U2_LIKE, dim, N)
    return Identification(AlgebraTag.OTHER, dim, N)
