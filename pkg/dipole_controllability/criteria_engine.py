# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
"""
Rule engine: sufficient and negative controllability criteria for dipole
systems, evaluated in a fixed order, with every firing witness recorded.

Rule order: decomposability, theorem 1, theorem 2, theorem 3 (positive),
theorem 4, theorem 5, full degeneracy (negative), then the four-level
classification, then the closure oracle when one is supplied.
"""
import logging

from .base import Conclusion, RuleFiring, RuleTag, Tolerances, Verdict
from .classifier4 import classify4
from .lie_closure import spanContains
from .system_model import BasisKind, basisElement, deriveParams

logger = logging.getLogger(__name__)


def _params(spec, params, epsParam):
    return params if params is not None else deriveParams(spec, epsParam)


def _positiveVerdict(params, firings, note):
    traceZero = params.traceIsZero()
    N = params.getN()
    notes = [note]
    if traceZero:
        notes.append('Tr(H0) = 0 within tolerance: su(%d) is generated, not u(%d)' % (N, N))
        expected = N * N - 1
    else:
        notes.append('Tr(H0) = %r verified nonzero: su(%d) plus Tr(H0) gives u(%d)' % (params.getTraceH0(), N, N))
        expected = N * N
    return Verdict(Conclusion.positive(traceZero), firings, notes, expected)


##
# @param spec A valid SystemSpec.
# @param params Its DerivedParams, or None.
# @param epsParam Relative tolerance used when params is None.
# @return True iff some d_n vanishes within eps_param.
def checkDecomposable(spec, params=None, epsParam=Tolerances.DEFAULT_EPS_PARAM):
    params = _params(spec, params, epsParam)
    return any(params.dipoleIsZero(n) for n in range(1, spec.getN()))


def _decomposableVerdict(spec, params):
    zeros = [n for n in range(1, spec.getN()) if params.dipoleIsZero(n)]
    firings = [RuleFiring(RuleTag.DECOMPOSABLE, p=n) for n in zeros]
    return Verdict(Conclusion.NOT_CONTROLLABLE, firings,
                   ['d_%d = 0: the dynamics decompose into independent subspaces' % zeros[0]])


def _uniqueSpacing(params, p):
    """
    mu_p != 0 and mu_n != mu_p for every n != p.
    """
    if params.muIsZero(p):
        return False
    return all(not params.muEqual(n, p) for n in range(1, params.getN()) if n != p)


def _uniqueV(params, p):
    if params.vIsZero(p):
        return False
    return all(not params.vEqual(n, p) for n in range(1, params.getN()) if n != p)


def _dipoleWitnesses(params, p):
    """
    Offsets k with d_{p-k} != +-d_{p+k}. Away from the middle k = min(p, N-p)
    always works because one of d_{p-k}, d_{p+k} is a boundary zero.
    """
    N = params.getN()
    if 2 * p != N:
        return [min(p, N - p)], True
    return [k for k in range(1, p) if not params.dipolesEqualUpToSign(p - k, p + k)], False


##
# @param spec A valid, non-decomposable SystemSpec.
# @param params Its DerivedParams, or None.
# @return A positive Verdict, or None when the rule does not apply.
def checkTheorem1(spec, params=None, epsParam=Tolerances.DEFAULT_EPS_PARAM):
    """
    mu_1 != 0 and mu_n != mu_1 for n >= 2, or the mirrored condition on mu_{N-1}.
    """
    params = _params(spec, params, epsParam)
    N = spec.getN()
    firings = []
    if _uniqueSpacing(params, 1):
        firings.append(RuleFiring(RuleTag.THEOREM1, p=1))
    if N > 2 and _uniqueSpacing(params, N - 1):
        firings.append(RuleFiring(RuleTag.THEOREM1_MIRRORED, p=N - 1))
    if not firings:
        return None
    return _positiveVerdict(params, firings, 'outer spacing differs from every other spacing')


##
# @param spec A valid, non-decomposable SystemSpec.
# @param params Its DerivedParams, or None.
# @return A positive Verdict with every (p, k) witness, or None.
def checkTheorem2(spec, params=None, epsParam=Tolerances.DEFAULT_EPS_PARAM):
    """
    Some mu_p != 0 distinct from every other spacing, and some k with
    d_{p-k} != +-d_{p+k}. For p != N/2 the k condition holds automatically
    (corollary 1 for odd N, corollary 2 for even N).
    """
    params = _params(spec, params, epsParam)
    N = spec.getN()
    firings = []
    for p in range(1, N):
        if not _uniqueSpacing(params, p):
            continue
        ks, automatic = _dipoleWitnesses(params, p)
        if automatic:
            detail = 'corollary1' if N % 2 else 'corollary2'
        else:
            detail = 'p = N/2, d_{p-k} != +-d_{p+k}'
        for k in ks:
            firings.append(RuleFiring(RuleTag.THEOREM2, p=p, k=k, detail=detail))
    if not firings:
        return None
    return _positiveVerdict(params, firings, 'unique spacing mu_%d generates x and y on its transition'
                            % firings[0].getP())


##
# @param spec A valid, non-decomposable, equally spaced SystemSpec with mu != 0.
# @param params Its DerivedParams, or None.
# @return A positive Verdict with every (p, k) witness, or None.
def checkTheorem3(spec, params=None, epsParam=Tolerances.DEFAULT_EPS_PARAM):
    """
    Equally spaced levels with some v_p != 0 distinct from every other v_n
    (plus the d_{p-k} != +-d_{p+k} condition when p = N/2).
    """
    params = _params(spec, params, epsParam)
    if not params.isEquallySpaced() or params.muIsZero(1):
        return None
    N = spec.getN()
    firings = []
    for p in range(1, N):
        if not _uniqueV(params, p):
            continue
        ks, automatic = _dipoleWitnesses(params, p)
        detail = None if automatic else 'p = N/2, d_{p-k} != +-d_{p+k}'
        for k in ks:
            firings.append(RuleFiring(RuleTag.THEOREM3, p=p, k=k, detail=detail))
    if not firings:
        return None
    return _positiveVerdict(params, firings, 'equal spacing with unique v_%d = %r'
                            % (firings[0].getP(), params.vAt(firings[0].getP())))


##
# @param spec A valid SystemSpec.
# @param params Its DerivedParams, or None.
# @return A NotControllable Verdict (expected dimension 4, 3 with zero trace), or None.
def checkTheorem4(spec, params=None, epsParam=Tolerances.DEFAULT_EPS_PARAM):
    """
    Equally spaced levels with all v_n equal generate a four-dimensional algebra.
    """
    params = _params(spec, params, epsParam)
    N = spec.getN()
    if N <= 2 or not params.isEquallySpaced() or params.muIsZero(1) or not params.allVEqual():
        return None
    expected = 3 if params.traceIsZero() else 4
    return Verdict(Conclusion.NOT_CONTROLLABLE,
                   [RuleFiring(RuleTag.THEOREM4, detail='all v_n = %r' % params.vAt(1))],
                   ['expected closure dimension %d (u(2)-like)' % expected], expected)


##
# @param spec A valid SystemSpec.
# @param params Its DerivedParams, or None.
# @return A NotControllable Verdict, or None.
def checkTheorem5(spec, params=None, epsParam=Tolerances.DEFAULT_EPS_PARAM):
    """
    Equally spaced levels with all |d_n| equal, N > 2. A common value c is
    reduced to d_n = 1 by scaling iH1, and signs by flipping basis vectors.
    """
    params = _params(spec, params, epsParam)
    N = spec.getN()
    if N <= 2 or not params.isEquallySpaced() or params.muIsZero(1):
        return None
    if not all(params.dipolesEqualUpToSign(1, n) for n in range(2, N)):
        return None
    common = abs(spec.getDipole(1))
    return Verdict(Conclusion.NOT_CONTROLLABLE,
                   [RuleFiring(RuleTag.THEOREM5, detail='|d_n| = %r' % common)],
                   ['constant dipole %r reduced to 1 by scaling iH1' % common])


##
# @param spec A valid SystemSpec.
# @param params Its DerivedParams, or None.
# @return A NotControllable Verdict when all levels coincide, or None.
def checkFullyDegenerate(spec, params=None, epsParam=Tolerances.DEFAULT_EPS_PARAM):
    """
    All mu_n = 0: H0 is a multiple of I and the algebra is span{iH0, iH1}.
    """
    params = _params(spec, params, epsParam)
    if not params.allMuZero():
        return None
    expected = 1 if params.traceIsZero() else 2
    return Verdict(Conclusion.NOT_CONTROLLABLE, [RuleFiring(RuleTag.FULLY_DEGENERATE)],
                   ['H0 proportional to I: algebra spanned by iH0 and iH1 (dimension %d)' % expected], expected)


##
# @param oracle A LieClosureResult for iH0, iH1.
# @param params DerivedParams of the same spec.
# @return The Conclusion implied by the closure.
def oracleConclusion(oracle, params):
    N = oracle.getN()
    dim = oracle.getDimension()
    if dim == N * N:
        return Conclusion.COMPLETELY_CONTROLLABLE
    if dim == N * N - 1 and params.traceIsZero() and not oracle.containsIdentity():
        return Conclusion.CONTROLLABLE_UP_TO_PHASE
    return Conclusion.NOT_CONTROLLABLE


##
# @param verdict A rule-engine Verdict.
# @param oracle A LieClosureResult for the same spec.
# @param params DerivedParams of the same spec.
# @return False iff the definite verdict contradicts the closure.
def verdictAgreesWithOracle(verdict, oracle, params):
    conclusion = verdict.getConclusion()
    N = oracle.getN()
    dim = oracle.getDimension()
    traceZero = params.traceIsZero()
    if conclusion == Conclusion.UNDETERMINED:
        return True
    if conclusion == Conclusion.COMPLETELY_CONTROLLABLE:
        return dim == N * N and not traceZero
    if conclusion == Conclusion.CONTROLLABLE_UP_TO_PHASE:
        return dim == N * N - 1 and traceZero and not oracle.containsIdentity()
    return dim < N * N and not (traceZero and dim == N * N - 1)


##
# @param firing A positive RuleFiring with witness p.
# @param oracle A LieClosureResult.
# @return True iff x_{p,p+1} and y_{p,p+1} lie in the closure span, or None when the firing has no p.
def witnessInSpan(firing, oracle):
    p = firing.getP()
    if p is None:
        return None
    N = oracle.getN()
    basis = oracle.getBasis()
    eps = oracle.getEpsRank()
    return all(spanContains(basis, basisElement(kind, p, p + 1, N), eps) for kind in (BasisKind.X, BasisKind.Y))


##
# @param spec A valid SystemSpec.
# @param params Its DerivedParams, or None.
# @param oracle Optional LieClosureResult deciding when every rule abstains.
# @param epsParam Relative tolerance used when params is None.
# @return The Verdict with provenance.
def fullVerdict(spec, params=None, oracle=None, epsParam=Tolerances.DEFAULT_EPS_PARAM):
    params = _params(spec, params, epsParam)
    fragile = params.fragileComparisons()
    fragileNotes = ['numerically fragile: ' + ', '.join(fragile)] if fragile else []
    if fragile:
        logger.warning('Fragile comparisons for %s: %s', spec.getName() or 'spec', ', '.join(fragile))

    if checkDecomposable(spec, params):
        verdict = _decomposableVerdict(spec, params)
        return Verdict(verdict.getConclusion(), verdict.getProvenance(), verdict.getNotes() + fragileNotes)

    positives = [v for v in (checkTheorem1(spec, params), checkTheorem2(spec, params), checkTheorem3(spec, params))
                 if v is not None]
    if positives:
        firings = [f for v in positives for f in v.getProvenance()]
        head = positives[0]
        logger.debug('Positive rules fired: %s', [str(f) for f in firings])
        return Verdict(head.getConclusion(), firings, head.getNotes() + fragileNotes, head.getExpectedDimension())

    negatives = [v for v in (checkTheorem4(spec, params), checkTheorem5(spec, params),
                             checkFullyDegenerate(spec, params)) if v is not None]
    if negatives:
        firings = [f for v in negatives for f in v.getProvenance()]
        notes = [n for v in negatives for n in v.getNotes()]
        expected = next((v.getExpectedDimension() for v in negatives if v.getExpectedDimension() is not None), None)
        logger.debug('Negative rules fired: %s', [str(f) for f in firings])
        return Verdict(Conclusion.NOT_CONTROLLABLE, firings, notes + fragileNotes, expected)

    if spec.getN() == 4:
        _, verdict = classify4(spec, params)
        return Verdict(verdict.getConclusion(), verdict.getProvenance(), verdict.getNotes() + fragileNotes,
                       verdict.getExpectedDimension())

    if oracle is not None:
        conclusion = oracleConclusion(oracle, params)
        detail = str(oracle.getIdentification())
        return Verdict(conclusion, [RuleFiring(RuleTag.ORACLE, detail=detail)],
                       ['no criterion applies; closure dimension %d decides' % oracle.getDimension()] + fragileNotes,
                       oracle.getDimension())

    return Verdict(Conclusion.UNDETERMINED, [], ['no criterion applies'] + fragileNotes)

