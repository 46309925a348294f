# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
"""
Exhaustive controllability classification of four-level dipole systems,
row by row with the four-level controllability table (anharmonic "AO" rows
split by spacing pattern, harmonic "HO" rows split by the v_n pattern).
"""
import logging
import math

import numpy as np

from .base import AlgebraTag, Conclusion, ControllabilityException, Identification, RuleFiring, RuleTag, \
    Tolerances, Verdict
from .system_model import BasisKind, SkewHermMatrix, deriveParams, offDiagonalElement

logger = logging.getLogger(__name__)


class NotFourLevelException(ControllabilityException):
    """
    The four-level classification was asked for a system with N != 4.
    """
    pass


class CaseTag:
    """
    Spacing-pattern cases of a four-level system.
    """
    MU_ALL_DISTINCT = 'mu_all_distinct'
    MU1_NE_MU2_EQ_MU3 = 'mu1_ne_mu2_eq_mu3'
    MU1_EQ_MU2_NE_MU3 = 'mu1_eq_mu2_ne_mu3'
    MU1_EQ_MU3_NE_MU2_NONZERO = 'mu1_eq_mu3_ne_mu2_nonzero'
    MU1_EQ_MU3_NE_MU2_ZERO = 'mu1_eq_mu3_ne_mu2_zero'
    EQUAL_SPACING_WITH_V_SUBCASE = 'equal_spacing_with_v_subcase'
    FULLY_DEGENERATE = 'fully_degenerate'
    #some d_n = 0, outside the table
    DECOMPOSABLE = 'decomposable'


class VSubcase:
    """
    v_n patterns of an equally spaced four-level system.
    """
    V_ALL_DISTINCT = 'v1_ne_v2_ne_v3'
    V1_NE_V2_EQ_V3 = 'v1_ne_v2_eq_v3'
    V1_EQ_V2_NE_V3 = 'v1_eq_v2_ne_v3'
    V1_EQ_V3_NE_V2 = 'v1_eq_v3_ne_v2'
    V_ALL_EQUAL = 'v_all_equal'


class TableRow:
    """
    One row of the four-level controllability table, with representative systems.
    """
    ##
    # @param self The TableRow to construct.
    # @param label Row label (the condition of the row).
    # @param system 'AO' (anharmonic), 'HO' (equally spaced) or 'degenerate'.
    # @param controllable Whether the row is completely controllable.
    # @param dimension Dynamical Lie algebra dimension for a nonzero trace.
    # @param representatives List of (levels, dipoles) tuples satisfying the row.
    def __init__(self, label, system, controllable, dimension, representatives):
        self.label_ = label
        self.system_ = system
        self.controllable_ = controllable
        self.dimension_ = dimension
        self.representatives_ = representatives

    def getLabel(self):
        return self.label_

    def getSystem(self):
        return self.system_

    def isControllable(self):
        return self.controllable_

    def getDimension(self):
        return self.dimension_

    def getRepresentatives(self):
        return list(self.representatives_)


_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)

TABLE_ROWS = [
    TableRow('mu1 != mu2 != mu3', 'AO', True, 16,
             [((0, 1, 3, 6), (1, 1, 1))]),
    TableRow('mu1 != mu2 = mu3', 'AO', True, 16,
             [((0, 1, 3, 5), (1, 1, 1)), ((0, 0, 1, 2), (1, 1, 1))]),
    TableRow('mu1 = mu2 != mu3', 'AO', True, 16,
             [((0, 1, 2, 4), (1, 1, 1)), ((0, 1, 2, 2), (1, 2, 1))]),
    TableRow('mu1 = mu3 != mu2, d1 != +-d3', 'AO', True, 16,
             [((0, 1, 3, 4), (1, 1, 2)), ((0, 1, 1, 2), (1, 1, 2))]),
    TableRow('mu1 = mu3 != mu2, d1 = +-d3', 'AO', False, 11,
             [((0, 1, 3, 4), (1, 1, 1)), ((0, 1, 3, 4), (1, 1, -1)), ((0, 1, 1, 2), (1, 1, 1))]),
    TableRow('mu1 = mu2 = mu3 != 0, v1 != v2 != v3', 'HO', True, 16,
             [((0, 1, 2, 3), (1, 1, 2))]),
    TableRow('mu1 = mu2 = mu3 != 0, v1 != v2 = v3', 'HO', True, 16,
             [((0, 1, 2, 3), (_SQRT3, _SQRT2, 1))]),
    TableRow('mu1 = mu2 = mu3 != 0, v1 = v2 != v3', 'HO', True, 16,
             [((0, 1, 2, 3), (1, _SQRT2, _SQRT3))]),
    TableRow('mu1 = mu2 = mu3 != 0, v1 = v3 != v2, d1 = +-d3', 'HO', False, 11,
             [((0, 1, 2, 3), (1, 1, 1)), ((0, 1, 2, 3), (1, 1, -1)), ((0, 1, 2, 3), (2, 1, 2))]),
    TableRow('mu1 = mu2 = mu3 != 0, v1 = v2 = v3', 'HO', False, 4,
             [((0, 1, 2, 3), (_SQRT3, 2, _SQRT3))]),
    TableRow('mu1 = mu2 = mu3 = 0', 'degenerate', False, 2,
             [((1, 1, 1, 1), (1, 1, 1))]),
]


class FourLevelCase:
    """
    The matched four-level case: spacing case, v pattern (equal spacing only),
    the d_1 = +-d_3 condition and the algebra the case generates.
    """
    ##
    # @param self The FourLevelCase to construct.
    # @param caseTag CaseTag constant.
    # @param vSubcase VSubcase constant, or None.
    # @param dCondition d_1 = +-d_3 within tolerance, or None when the case does not depend on it.
    # @param expectedAlgebra Identification of the generated algebra, or None (decomposable).
    # @param tableRow The matching TableRow, or None (decomposable).
    def __init__(self, caseTag, vSubcase, dCondition, expectedAlgebra, tableRow):
        self.caseTag_ = caseTag
        self.vSubcase_ = vSubcase
        self.dCondition_ = dCondition
        self.expectedAlgebra_ = expectedAlgebra
        self.tableRow_ = tableRow

    def getCaseTag(self):
        return self.caseTag_

    def getVSubcase(self):
        return self.vSubcase_

    def getDCondition(self):
        return self.dCondition_

    def getExpectedAlgebra(self):
        return self.expectedAlgebra_

    def getTableRow(self):
        return self.tableRow_

    def describe(self):
        if self.vSubcase_:
            return '%s/%s' % (self.caseTag_, self.vSubcase_)
        return self.caseTag_

    def __repr__(self):
        return 'FourLevelCase(%s, dCondition=%r, expectedAlgebra=%s)' \
            % (self.describe(), self.dCondition_, self.expectedAlgebra_)


##
# @return The ten sp(2) generators h_1, h_2, x_{2w1}, y_{2w1}, x_{2w2}, y_{2w2},
#         x_{w1+w2}, y_{w1+w2}, x_{w1-w2}, y_{w1-w2} as 4x4 skew-Hermitian matrices.
def sp2Basis():
    X, Y = BasisKind.X, BasisKind.Y

    def el(kind, a, b):
        return offDiagonalElement(kind, a, b, 4)

    return [
        SkewHermMatrix(np.diag([1j, 0, -1j, 0])),
        SkewHermMatrix(np.diag([0, 1j, 0, -1j])),
        el(X, 3, 1),
        el(Y, 3, 1),
        el(X, 4, 2),
        el(Y, 4, 2),
        el(X, 3, 2) + el(X, 4, 1),
        el(Y, 3, 2) + el(Y, 4, 1),
        el(X, 2, 1) - el(X, 3, 4),
        el(Y, 2, 1) - el(Y, 3, 4),
    ]


##
# @param sign +1 or -1, the sign given to |4>.
# @return Real orthogonal Q for {|1>,|2>,|3>,|4>} -> {|2>,|1>,|3>,sign|4>}; matrices transform as Q^T M Q.
def fourLevelBasisChange(sign):
    if sign not in (1, -1):
        raise ValueError('sign must be +1 or -1, got %r' % (sign,))
    return np.array([[0.0, 1.0, 0.0, 0.0],
                     [1.0, 0.0, 0.0, 0.0],
                     [0.0, 0.0, 1.0, 0.0],
                     [0.0, 0.0, 0.0, float(sign)]])


def _algebra(controllable, dimension, traceZero):
    if controllable:
        if traceZero:
            return Identification(AlgebraTag.SU_N, 15, 4)
        return Identification(AlgebraTag.U_N, 16, 4)
    if dimension == 11:
        if traceZero:
            return Identification(AlgebraTag.SP2, 10, 4)
        return Identification(AlgebraTag.SP2_PLUS_U1, 11, 4)
    if dimension == 4:
        if traceZero:
            return Identification(AlgebraTag.OTHER, 3, 4)
        return Identification(AlgebraTag.U2_LIKE, 4, 4)
    return Identification(AlgebraTag.OTHER, dimension - 1 if traceZero else dimension, 4)


def _equalSpacingSubcase(params):
    v12 = params.vEqual(1, 2)
    v23 = params.vEqual(2, 3)
    v13 = params.vEqual(1, 3)
    if v12 and v23:
        return VSubcase.V_ALL_EQUAL, TABLE_ROWS[9]
    if v13 and not v12:
        return VSubcase.V1_EQ_V3_NE_V2, TABLE_ROWS[8]
    if v12:
        return VSubcase.V1_EQ_V2_NE_V3, TABLE_ROWS[7]
    if v23:
        return VSubcase.V1_NE_V2_EQ_V3, TABLE_ROWS[6]
    return VSubcase.V_ALL_DISTINCT, TABLE_ROWS[5]


##
# @param spec A SystemSpec with N = 4.
# @param params Its DerivedParams (derived with epsParam when None).
# @param epsParam Relative tolerance used when params is None.
# @return Tuple (FourLevelCase, Verdict).
def classify4(spec, params=None, epsParam=Tolerances.DEFAULT_EPS_PARAM):
    """
    Match a four-level system to its case. Zero-trace systems follow the same
    case logic with conclusions capped at ControllableUpToPhase.
    """
    if spec.getN() != 4:
        raise NotFourLevelException('The four-level classification needs N = 4, got N = %d' % spec.getN())
    if params is None:
        params = deriveParams(spec, epsParam)
    traceZero = params.traceIsZero()

    zeroDipoles = [n for n in range(1, 4) if params.dipoleIsZero(n)]
    if zeroDipoles:
        case = FourLevelCase(CaseTag.DECOMPOSABLE, None, None, None, None)
        verdict = Verdict(Conclusion.NOT_CONTROLLABLE,
                          [RuleFiring(RuleTag.CLASSIFIER4, detail=CaseTag.DECOMPOSABLE)],
                          ['d_%d = 0 splits the dynamics into independent subspaces' % zeroDipoles[0]])
        return case, verdict

    dCondition = params.dipolesEqualUpToSign(1, 3)
    eq12 = params.muEqual(1, 2)
    eq23 = params.muEqual(2, 3)
    eq13 = params.muEqual(1, 3)
    vSubcase = None
    caseDCondition = None

    if params.allMuZero():
        caseTag, row = CaseTag.FULLY_DEGENERATE, TABLE_ROWS[10]
    elif eq12 and eq23:
        caseTag = CaseTag.EQUAL_SPACING_WITH_V_SUBCASE
        vSubcase, row = _equalSpacingSubcase(params)
        if vSubcase == VSubcase.V1_EQ_V3_NE_V2:
            caseDCondition = dCondition
    elif eq13 and not eq12:
        caseTag = CaseTag.MU1_EQ_MU3_NE_MU2_ZERO if params.muIsZero(2) else CaseTag.MU1_EQ_MU3_NE_MU2_NONZERO
        caseDCondition = dCondition
        row = TABLE_ROWS[4] if dCondition else TABLE_ROWS[3]
    elif eq12:
        caseTag, row = CaseTag.MU1_EQ_MU2_NE_MU3, TABLE_ROWS[2]
    elif eq23:
        caseTag, row = CaseTag.MU1_NE_MU2_EQ_MU3, TABLE_ROWS[1]
    else:
        caseTag, row = CaseTag.MU_ALL_DISTINCT, TABLE_ROWS[0]

    algebra = _algebra(row.isControllable(), row.getDimension(), traceZero)
    case = FourLevelCase(caseTag, vSubcase, caseDCondition, algebra, row)
    if row.isControllable():
        conclusion = Conclusion.positive(traceZero)
    else:
        conclusion = Conclusion.NOT_CONTROLLABLE
    notes = ['table row: %s (%s)' % (row.getLabel(), row.getSystem())]
    if traceZero:
        notes.append('Tr(H0) = 0: the algebra cannot contain i I')
    verdict = Verdict(conclusion, [RuleFiring(RuleTag.CLASSIFIER4, detail=case.describe())], notes,
                      algebra.getDimension())
    logger.debug('Four-level case %s -> %s', case.describe(), conclusion)
    return case, verdict
