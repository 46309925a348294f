# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
"""
Base classes and constants shared by the dipole_controllability modules:
conclusions, algebra tags, rule tags, tolerances and verdicts.
"""
import math
import sys


class ControllabilityException(Exception):
    """
    Root of every exception raised by the package.
    """
    ##
    # @param self The ControllabilityException instance to construct.
    # @param msg Exception's error message.
    def __init__(self, msg):
        """
        Constructor.
        """
        Exception.__init__(self, msg)
        self.msg_ = msg

    ##
    # @param self The ControllabilityException instance.
    # @return A string representation for the exception.
    def __str__(self):
        """
        String representation.
        """
        return self.msg_


class InvalidToleranceException(ControllabilityException):
    """
    A tolerance is not a positive finite real.
    """
    pass


class Conclusion:
    """
    Controllability conclusion of a verdict.
    """
    COMPLETELY_CONTROLLABLE = 'CompletelyControllable'
    CONTROLLABLE_UP_TO_PHASE = 'ControllableUpToPhase'
    NOT_CONTROLLABLE = 'NotControllable'
    UNDETERMINED = 'Undetermined'

    ALL = (COMPLETELY_CONTROLLABLE, CONTROLLABLE_UP_TO_PHASE, NOT_CONTROLLABLE, UNDETERMINED)

    ##
    # @param conclusion A Conclusion constant.
    # @return True if the conclusion is a definite one (not Undetermined).
    @staticmethod
    def isDefinite(conclusion):
        return conclusion != Conclusion.UNDETERMINED

    ##
    # @param traceIsZero The trace of H0 vanishes within tolerance.
    # @return The positive conclusion reachable once su(N) is generated.
    @staticmethod
    def positive(traceIsZero):
        """
        su(N) plus a nonzero trace gives u(N); with zero trace only su(N) is reachable.
        """
        if traceIsZero:
            return Conclusion.CONTROLLABLE_UP_TO_PHASE
        return Conclusion.COMPLETELY_CONTROLLABLE


class AlgebraTag:
    """
    Identification tags for dynamical Lie algebras.
    """
    U_N, SU_N, U2_LIKE, SP2_PLUS_U1, SP2, OTHER = range(6)

    ##
    # @param tag An AlgebraTag constant.
    # @return The tag name.
    @staticmethod
    def asString(tag):
        names = {AlgebraTag.U_N: 'u(N)',
                 AlgebraTag.SU_N: 'su(N)',
                 AlgebraTag.U2_LIKE: 'u2_like',
                 AlgebraTag.SP2_PLUS_U1: 'sp2_plus_u1',
                 AlgebraTag.SP2: 'sp2',
                 AlgebraTag.OTHER: 'other'}
        return names[tag]


class Identification:
    """
    An algebra tag together with the algebra dimension and the system size.
    """
    ##
    # @param self The Identification to construct.
    # @param tag AlgebraTag constant.
    # @param dimension Real dimension of the algebra.
    # @param N System size.
    def __init__(self, tag, dimension, N):
        self.tag_ = tag
        self.dimension_ = dimension
        self.N_ = N

    def getTag(self):
        return self.tag_

    def getDimension(self):
        return self.dimension_

    def getN(self):
        return self.N_

    def __eq__(self, other):
        if not isinstance(other, Identification):
            return NotImplemented
        return (self.tag_, self.dimension_, self.N_) == (other.tag_, other.dimension_, other.N_)

    def __hash__(self):
        return hash((self.tag_, self.dimension_, self.N_))

    ##
    # @param self The Identification.
    # @return Human readable name, e.g. "u(4)", "su(3)", "sp2_plus_u1(11)" or "other(2)".
    def __str__(self):
        if self.tag_ == AlgebraTag.U_N:
            return 'u(%d)' % self.N_
        if self.tag_ == AlgebraTag.SU_N:
            return 'su(%d)' % self.N_
        return '%s(%d)' % (AlgebraTag.asString(self.tag_), self.dimension_)

    def __repr__(self):
        return 'Identification(%s)' % str(self)


class RuleTag:
    """
    Provenance tags for the rules of the criteria engine.
    """
    DECOMPOSABLE = 'decomposable'
    THEOREM1 = 'theorem1'
    THEOREM1_MIRRORED = 'theorem1_mirrored'
    THEOREM2 = 'theorem2'
    THEOREM3 = 'theorem3'
    THEOREM4 = 'theorem4'
    THEOREM5 = 'theorem5'
    FULLY_DEGENERATE = 'fully_degenerate'
    CLASSIFIER4 = 'classifier4'
    ORACLE = 'oracle'

    #Fixed evaluation order, used to sort provenance
    ORDER = (DECOMPOSABLE, THEOREM1, THEOREM1_MIRRORED, THEOREM2, THEOREM3,
             THEOREM4, THEOREM5, FULLY_DEGENERATE, CLASSIFIER4, ORACLE)


class Tolerances:
    """
    Numerical tolerances: eps_param for scalar equalities, eps_rank for rank decisions.
    """
    DEFAULT_EPS_PARAM = 1e-9
    DEFAULT_EPS_RANK = 1e-8
    #Comparisons closer than FRAGILITY_FACTOR * eps to the boundary are reported as fragile
    FRAGILITY_FACTOR = 10.0
    #Absolute floor for spacing tests, in units of max|E|: covers the round-off of E_{n+1} - E_n
    ROUNDOFF_FACTOR = 64 * sys.float_info.epsilon

    ##
    # @param self The Tolerances to construct.
    # @param epsParam Relative tolerance for scalar equality tests.
    # @param epsRank Residual threshold for rank decisions on unit-norm operands.
    def __init__(self, epsParam=DEFAULT_EPS_PARAM, epsRank=DEFAULT_EPS_RANK):
        for name, value in (('eps_param', epsParam), ('eps_rank', epsRank)):
            if value is None or not math.isfinite(value) or value <= 0:
                raise InvalidToleranceException('%s must be a positive finite real, got %r' % (name, value))
        self.epsParam_ = float(epsParam)
        self.epsRank_ = float(epsRank)

    def getEpsParam(self):
        return self.epsParam_

    def getEpsRank(self):
        return self.epsRank_

    def __eq__(self, other):
        if not isinstance(other, Tolerances):
            return NotImplemented
        return self.epsParam_ == other.epsParam_ and self.epsRank_ == other.epsRank_

    def __repr__(self):
        return 'Tolerances(epsParam=%r, epsRank=%r)' % (self.epsParam_, self.epsRank_)

    ##
    # @param flagEpsParam eps_param given on the command line, or None.
    # @param flagEpsRank eps_rank given on the command line, or None.
    # @param fileTolerances Dict with optional 'eps_param'/'eps_rank' keys from a spec file, or None.
    # @return The effective Tolerances: flag wins over file, file wins over defaults.
    @staticmethod
    def resolve(flagEpsParam=None, flagEpsRank=None, fileTolerances=None):
        fileTolerances = fileTolerances or {}
        epsParam = Tolerances.DEFAULT_EPS_PARAM
        epsRank = Tolerances.DEFAULT_EPS_RANK
        if fileTolerances.get('eps_param') is not None:
            epsParam = fileTolerances['eps_param']
        if fileTolerances.get('eps_rank') is not None:
            epsRank = fileTolerances['eps_rank']
        if flagEpsParam is not None:
            epsParam = flagEpsParam
        if flagEpsRank is not None:
            epsRank = flagEpsRank
        return Tolerances(epsParam, epsRank)


class RuleFiring:
    """
    A rule that fired, with its witnessing indices.
    """
    ##
    # @param self The RuleFiring to construct.
    # @param tag RuleTag constant.
    # @param p Witness index p (1-based), or None.
    # @param k Witness offset k, or None.
    # @param detail Free text (corollary used, classifier case, ...).
    def __init__(self, tag, p=None, k=None, detail=None):
        self.tag_ = tag
        self.p_ = p
        self.k_ = k
        self.detail_ = detail

    def getTag(self):
        return self.tag_

    def getP(self):
        return self.p_

    def getK(self):
        return self.k_

    def getDetail(self):
        return self.detail_

    def __eq__(self, other):
        if not isinstance(other, RuleFiring):
            return NotImplemented
        return (self.tag_, self.p_, self.k_, self.detail_) == (other.tag_, other.p_, other.k_, other.detail_)

    def __hash__(self):
        return hash((self.tag_, self.p_, self.k_, self.detail_))

    def __str__(self):
        text = self.tag_
        witness = []
        if self.p_ is not None:
            witness.append('p=%d' % self.p_)
        if self.k_ is not None:
            witness.append('k=%d' % self.k_)
        if witness:
            text += '(' + ', '.join(witness) + ')'
        if self.detail_:
            text += ' [' + self.detail_ + ']'
        return text

    def __repr__(self):
        return 'RuleFiring(%s)' % str(self)


class InvalidVerdictException(ControllabilityException):
    """
    A definite conclusion was built without provenance.
    """
    pass


class Verdict:
    """
    Controllability conclusion plus the rules that justify it.
    """
    ##
    # @param self The Verdict to construct.
    # @param conclusion Conclusion constant.
    # @param provenance List of RuleFiring; the first one is the headline witness.
    # @param notes List of free-text notes.
    # @param expectedDimension Expected dimension of the dynamical Lie algebra, when the rule knows it.
    def __init__(self, conclusion, provenance=None, notes=None, expectedDimension=None):
        provenance = list(provenance or [])
        if conclusion not in Conclusion.ALL:
            raise InvalidVerdictException('Unknown conclusion %r' % (conclusion,))
        if Conclusion.isDefinite(conclusion) and not provenance:
            raise InvalidVerdictException('Conclusion %s requires a non-empty provenance' % conclusion)
        self.conclusion_ = conclusion
        self.provenance_ = provenance
        self.notes_ = list(notes or [])
        self.expectedDimension_ = expectedDimension

    def getConclusion(self):
        return self.conclusion_

    def getProvenance(self):
        return list(self.provenance_)

    def getHeadline(self):
        """
        The headline firing, or None for Undetermined verdicts.
        """
        return self.provenance_[0] if self.provenance_ else None

    def getNotes(self):
        return list(self.notes_)

    def getExpectedDimension(self):
        return self.expectedDimension_

    def getRuleTags(self):
        return [f.getTag() for f in self.provenance_]

    def __repr__(self):
        return 'Verdict(%s, %s)' % (self.conclusion_, [str(f) for f in self.provenance_])
