# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
"""
Reports: the rule-engine verdict for one spec, optionally checked against the
closure oracle, and the four-level table reconstruction. Writers render
reports as text or Json; both carry the same facts.
"""
import logging
import time

from .base import Conclusion, Tolerances
from .classifier4 import TABLE_ROWS, classify4
from .criteria_engine import fullVerdict, oracleConclusion, verdictAgreesWithOracle, witnessInSpan
from .lie_closure import closure
from .serialization import ReportSerializer, asJsonString
from .system_model import SystemSpec, buildH0, buildH1, deriveParams

logger = logging.getLogger(__name__)


class Report:
    """
    Everything known about one spec: derived parameters, verdict, and
    (when requested) closure result, four-level case and agreement flag.
    """
    def __init__(self, spec, tolerances, params, verdict, oracle=None, fourLevelCase=None,
                 witnessesVerified=None, rulesSeconds=0.0, oracleSeconds=None):
        self.spec_ = spec
        self.tolerances_ = tolerances
        self.params_ = params
        self.verdict_ = verdict
        self.oracle_ = oracle
        self.fourLevelCase_ = fourLevelCase
        self.witnessesVerified_ = witnessesVerified
        self.rulesSeconds_ = rulesSeconds
        self.oracleSeconds_ = oracleSeconds
        self.agreement_ = None if oracle is None else verdictAgreesWithOracle(verdict, oracle, params)

    def getSpec(self):
        return self.spec_

    def getTolerances(self):
        return self.tolerances_

    def getParams(self):
        return self.params_

    def getVerdict(self):
        return self.verdict_

    def getOracle(self):
        return self.oracle_

    def getFourLevelCase(self):
        return self.fourLevelCase_

    def getWitnessesVerified(self):
        return self.witnessesVerified_

    ##
    # @param self The Report instance.
    # @return True/False when the oracle ran, None otherwise.
    def getAgreement(self):
        return self.agreement_

    def getRulesSeconds(self):
        return self.rulesSeconds_

    def getOracleSeconds(self):
        return self.oracleSeconds_


##
# @param spec A valid SystemSpec.
# @param epsRank Closure residual threshold.
# @return The LieClosureResult for iH0, iH1.
def oracleFor(spec, epsRank=Tolerances.DEFAULT_EPS_RANK):
    return closure([buildH0(spec), buildH1(spec)], epsRank)


def _verifyWitnesses(verdict, oracle):
    """
    For a positive verdict: every firing witness pair lies in the closure. None when nothing to verify.
    """
    if verdict.getConclusion() not in (Conclusion.COMPLETELY_CONTROLLABLE, Conclusion.CONTROLLABLE_UP_TO_PHASE):
        return None
    checks = [witnessInSpan(f, oracle) for f in verdict.getProvenance()]
    checks = [c for c in checks if c is not None]
    return all(checks) if checks else None


##
# @param spec A valid SystemSpec.
# @param tolerances Tolerances (defaults when None).
# @param withOracle Whether to run the closure oracle too.
# @return The Report for spec.
def buildReport(spec, tolerances=None, withOracle=False):
    tolerances = tolerances or Tolerances()
    start = time.perf_counter()
    params = deriveParams(spec, tolerances.getEpsParam())
    fourLevelCase = classify4(spec, params)[0] if spec.getN() == 4 else None
    rulesSeconds = time.perf_counter() - start

    oracle = None
    oracleSeconds = None
    if withOracle:
        start = time.perf_counter()
        oracle = oracleFor(spec, tolerances.getEpsRank())
        oracleSeconds = time.perf_counter() - start

    start = time.perf_counter()
    verdict = fullVerdict(spec, params, oracle)
    rulesSeconds += time.perf_counter() - start

    witnesses = _verifyWitnesses(verdict, oracle) if oracle is not None else None
    report = Report(spec, tolerances, params, verdict, oracle, fourLevelCase, witnesses, rulesSeconds, oracleSeconds)
    if report.getAgreement() is False:
        logger.warning('Verdict %s disagrees with closure dimension %d for %r', verdict.getConclusion(),
                       oracle.getDimension(), spec)
    if witnesses is False:
        logger.warning('A positive witness pair is missing from the closure for %r', spec)
    return report


class TableCheck:
    """
    One representative of a four-level table row, classified and checked against the oracle.
    """
    def __init__(self, row, spec, case, verdict, oracle, params):
        self.row_ = row
        self.spec_ = spec
        self.case_ = case
        self.verdict_ = verdict
        self.oracle_ = oracle
        self.params_ = params

    def getRow(self):
        return self.row_

    def getSpec(self):
        return self.spec_

    def getCase(self):
        return self.case_

    def getVerdict(self):
        return self.verdict_

    def getOracle(self):
        return self.oracle_

    ##
    # @param self The TableCheck instance.
    # @return Label of the row classify4 matched (may differ from getRow() on a mismatch).
    def getMatchedRow(self):
        matched = self.case_.getTableRow()
        return matched.getLabel() if matched is not None else None

    ##
    # @param self The TableCheck instance.
    # @return True iff row, conclusion, dimension and identification all match.
    def isOk(self):
        expected = self.case_.getExpectedAlgebra()
        return (self.case_.getTableRow() is self.row_
                and self.oracle_.getDimension() == self.row_.getDimension()
                and oracleConclusion(self.oracle_, self.params_) == self.verdict_.getConclusion()
                and expected is not None
                and self.oracle_.getIdentification() == expected)


##
# @param tolerances Tolerances (defaults when None).
# @return List of TableCheck, one per representative of every four-level table row.
def reconstructTable(tolerances=None):
    tolerances = tolerances or Tolerances()
    checks = []
    for row in TABLE_ROWS:
        for levels, dipoles in row.getRepresentatives():
            spec = SystemSpec(levels, dipoles, row.getLabel())
            params = deriveParams(spec, tolerances.getEpsParam())
            case, verdict = classify4(spec, params)
            check = TableCheck(row, spec, case, verdict, oracleFor(spec, tolerances.getEpsRank()), params)
            if not check.isOk():
                logger.warning('Table row %r mismatch for levels %r, dipoles %r: matched %r, dimension %d',
                               row.getLabel(), levels, dipoles, check.getMatchedRow(),
                               check.getOracle().getDimension())
            checks.append(check)
    return checks


class ReportFormat:
    """
    Output format for a ReportWriter.
    """
    TEXT, JSON = range(2)


class ReportWriter:
    """
    Writes reports, table reconstructions and sweep summaries to a stream.
    Abstract interface: implement one per format.
    """
    def __init__(self, fp):
        self.fp_ = fp

    def writeReport(self, report):
        raise NotImplementedError

    def writeTable(self, checks):
        raise NotImplementedError

    def writeSweep(self, summary):
        raise NotImplementedError


class JsonReportWriter(ReportWriter):
    def __init__(self, fp):
        ReportWriter.__init__(self, fp)
        self.serializer_ = ReportSerializer()

    def writeReport(self, report):
        self.serializer_.dump(report, self.fp_)

    def writeTable(self, checks):
        self.fp_.write(asJsonString(self.serializer_.dumpTableAsJsonList(checks)))
        self.fp_.write('\n')

    def writeSweep(self, summary):
        self.fp_.write(asJsonString(self.serializer_.dumpSweepAsJsonMap(summary)))
        self.fp_.write('\n')


def _numbers(values):
    return '(' + ', '.join('%.6g' % v for v in values) + ')'


class TextReportWriter(ReportWriter):
    """
    Human-readable output, one fact per line.
    """
    def writeReport(self, report):
        spec = report.getSpec()
        params = report.getParams()
        verdict = report.getVerdict()
        out = self.fp_
        out.write('system: %s (N = %d)\n' % (spec.getName() or '-', spec.getN()))
        out.write('levels: %s\n' % _numbers(spec.getLevels()))
        out.write('dipoles: %s\n' % _numbers(spec.getDipoles()))
        out.write('mu: %s\n' % _numbers(params.getMu()))
        out.write('v: %s\n' % _numbers(params.getV()))
        out.write('Tr(H0): %.6g\n' % params.getTraceH0())
        out.write('equally spaced: %s\n' % ('yes' if params.isEquallySpaced() else 'no'))
        for fragile in params.fragileComparisons():
            out.write('fragile: %s\n' % fragile)
        out.write('verdict: %s\n' % verdict.getConclusion())
        for firing in verdict.getProvenance():
            out.write('  by %s\n' % firing)
        for note in verdict.getNotes():
            out.write('  note: %s\n' % note)
        if verdict.getExpectedDimension() is not None:
            out.write('expected dimension: %d\n' % verdict.getExpectedDimension())
        case = report.getFourLevelCase()
        if case is not None:
            out.write('four-level case: %s\n' % case.describe())
            if case.getTableRow() is not None:
                out.write('table row: %s\n' % case.getTableRow().getLabel())
            if case.getExpectedAlgebra() is not None:
                out.write('expected algebra: %s\n' % case.getExpectedAlgebra())
        oracle = report.getOracle()
        if oracle is not None:
            out.write('oracle dimension: %d\n' % oracle.getDimension())
            out.write('oracle identification: %s\n' % oracle.getIdentification())
            out.write('oracle contains iI: %s\n' % ('yes' if oracle.containsIdentity() else 'no'))
            out.write('oracle generations: %d\n' % oracle.getGenerations())
            if report.getWitnessesVerified() is not None:
                out.write('witnesses verified: %s\n' % ('yes' if report.getWitnessesVerified() else 'NO'))
            out.write('agreement: %s\n' % ('yes' if report.getAgreement() else 'NO'))
        out.write('timing: rules %.4fs' % report.getRulesSeconds())
        if report.getOracleSeconds() is not None:
            out.write(', oracle %.4fs' % report.getOracleSeconds())
        out.write('\n')

    def writeTable(self, checks):
        out = self.fp_
        out.write('%-52s %-11s %-12s %5s %7s  %s\n' % ('row', 'system', 'controllable', 'dim', 'oracle', 'status'))
        for check in checks:
            row = check.getRow()
            out.write('%-52s %-11s %-12s %5d %7d  %s   levels %s dipoles %s\n'
                      % (row.getLabel(), row.getSystem(), 'Yes' if row.isControllable() else 'No',
                         row.getDimension(), check.getOracle().getDimension(),
                         'ok' if check.isOk() else 'MISMATCH',
                         _numbers(check.getSpec().getLevels()), _numbers(check.getSpec().getDipoles())))
        mismatches = sum(1 for c in checks if not c.isOk())
        out.write('%d rows, %d representatives, %d mismatches\n' % (len(TABLE_ROWS), len(checks), mismatches))

    def writeSweep(self, summary):
        out = self.fp_
        out.write('sweep: %d specs, N in [%d, %d], seed %d\n' % (summary.getCount(), summary.getNMin(),
                                                                   summary.getNMax(), summary.getSeed()))
        for conclusion, count in sorted(summary.getConclusionCounts().items()):
            out.write('  %s: %d\n' % (conclusion, count))
        out.write('definite: %d\n' % summary.getDefiniteCount())
        out.write('undetermined rate: %.6g\n' % summary.getUndeterminedRate())
        for dimension, count in sorted(summary.getDimensionCounts().items()):
            out.write('  oracle dimension %d: %d\n' % (dimension, count))
        out.write('disagreements: %d%s\n' % (len(summary.getDisagreements()),
                                             '' if not summary.getDisagreements()
                                             else ' (specs %s)' % ', '.join(map(str, summary.getDisagreements()))))


class ReportWriterFactory:
    """
    Creates the ReportWriter for a format.
    """
    @staticmethod
    def createReportWriter(reportFormat, fp):
        if reportFormat == ReportFormat.JSON:
            return JsonReportWriter(fp)
        return TextReportWriter(fp)
