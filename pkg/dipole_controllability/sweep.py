# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
"""
Seeded random sweep: draws specs with forced equality collisions, runs the
rule engine (without oracle fallback) and the closure oracle on each, and
counts verdicts and disagreements.

Distribution, for a numpy Generator seeded with the sweep seed:
 - N uniform in [nmin, nmax];
 - each spacing copies an earlier spacing with probability 0.2, else is 0
   with probability 0.15, else Uniform(0.5, 2) rounded to 0.01;
 - the first dipole is +-Uniform(0.5, 2) rounded to 0.01, each later one
   copies +-(an earlier dipole) with probability 0.2, else is drawn the same way;
 - ground energy Uniform(-2, 2) rounded to 0.01, replaced with probability 0.1
   by the value that makes Tr(H0) = 0.
Specs are drawn in index order on the calling thread; workers only evaluate.
"""
import logging
from queue import Queue
from threading import Thread

import numpy as np

from .base import Conclusion, ControllabilityException, Tolerances
from .criteria_engine import fullVerdict, verdictAgreesWithOracle
from .report import oracleFor
from .system_model import SystemSpec, deriveParams

logger = logging.getLogger(__name__)

MIN_LEVELS = 2
MAX_LEVELS = 8

COPY_SPACING_PROBABILITY = 0.2
ZERO_SPACING_PROBABILITY = 0.15
COPY_DIPOLE_PROBABILITY = 0.2
ZERO_TRACE_PROBABILITY = 0.1
UNIFORM_LOW, UNIFORM_HIGH = 0.5, 2.0
GROUND_LOW, GROUND_HIGH = -2.0, 2.0


class InvalidSweepParamsException(ControllabilityException):
    """
    Exception class for sweep parameters out of range.
    """
    pass


def _uniform(rng, low=UNIFORM_LOW, high=UNIFORM_HIGH):
    return round(float(rng.uniform(low, high)), 2)


def _sign(rng):
    return 1.0 if rng.random() < 0.5 else -1.0


##
# @param rng numpy.random.Generator.
# @param nmin Smallest N.
# @param nmax Largest N.
# @param name Optional spec name.
# @return A random SystemSpec drawn from the sweep distribution.
def generateRandomSpec(rng, nmin, nmax, name=None):
    N = int(rng.integers(nmin, nmax + 1))
    spacings = []
    for _ in range(N - 1):
        if spacings and rng.random() < COPY_SPACING_PROBABILITY:
            spacings.append(spacings[int(rng.integers(len(spacings)))])
        elif rng.random() < ZERO_SPACING_PROBABILITY:
            spacings.append(0.0)
        else:
            spacings.append(_uniform(rng))

    dipoles = [_sign(rng) * _uniform(rng)]
    for _ in range(N - 2):
        if rng.random() < COPY_DIPOLE_PROBABILITY:
            dipoles.append(_sign(rng) * abs(dipoles[int(rng.integers(len(dipoles)))]))
        else:
            dipoles.append(_sign(rng) * _uniform(rng))

    groundEnergy = _uniform(rng, GROUND_LOW, GROUND_HIGH)
    if rng.random() < ZERO_TRACE_PROBABILITY:
        offsets = np.concatenate(([0.0], np.cumsum(spacings)))
        groundEnergy = -float(np.sum(offsets)) / N
    return SystemSpec.fromSpacings(spacings, groundEnergy, dipoles, name)


class SweepOutcome:
    """
    Result of evaluating one sweep spec.
    """
    def __init__(self, index, spec, verdict, dimension, agrees):
        self.index_ = index
        self.spec_ = spec
        self.verdict_ = verdict
        self.dimension_ = dimension
        self.agrees_ = agrees

    def getIndex(self):
        return self.index_

    def getSpec(self):
        return self.spec_

    def getVerdict(self):
        return self.verdict_

    def getDimension(self):
        return self.dimension_

    def agrees(self):
        return self.agrees_


##
# @param index Spec index in the sweep.
# @param spec SystemSpec to evaluate.
# @param tolerances Tolerances.
# @return The SweepOutcome: rule verdict, oracle dimension and agreement.
def evaluateSpec(index, spec, tolerances):
    params = deriveParams(spec, tolerances.getEpsParam())
    verdict = fullVerdict(spec, params)
    oracle = oracleFor(spec, tolerances.getEpsRank())
    agrees = verdictAgreesWithOracle(verdict, oracle, params)
    logger.debug('Spec %d (N = %d): %s, oracle dimension %d', index, spec.getN(), verdict.getConclusion(),
                 oracle.getDimension())
    if not agrees:
        logger.warning('Spec %d: verdict %s disagrees with oracle dimension %d: %r', index,
                       verdict.getConclusion(), oracle.getDimension(), spec)
    return SweepOutcome(index, spec, verdict, oracle.getDimension(), agrees)


class SweepWorkerThread(Thread):
    """
    Thread evaluating sweep specs taken from a queue. Outcomes are stored by
    spec index, so the aggregation does not depend on completion order.
    """
    class QueueInfo:
        """
        Indices in the item data stored in the queue.
        """
        class MessageTypes:
            """
            Type of queue message.
            """
            EVALUATE_SPEC, END_SWEEP = range(2)
        #Index in Queue item list
        MESSAGE_TYPE,\
        INDEX_SPEC_INDEX,\
        INDEX_SPEC = range(3)

    ##
    # @param self The SweepWorkerThread to construct.
    # @param specQueue Queue with the specs to evaluate.
    # @param outcomes Shared list, one slot per spec index.
    # @param tolerances Tolerances for every evaluation.
    def __init__(self, specQueue, outcomes, tolerances):
        Thread.__init__(self, daemon=True)
        self.specQueue_ = specQueue
        self.outcomes_ = outcomes
        self.tolerances_ = tolerances
        self.sweepEnded_ = False
        self.error_ = None

    def getError(self):
        return self.error_

    def run(self):
        """
        Processes queue messages until an END_SWEEP message arrives.
        """
        while not self.sweepEnded_:
            item = self.specQueue_.get()
            try:
                self._processQueueItem(item)
            except Exception as e:
                logger.exception('Sweep worker failed on spec %r',
                                 item.get(SweepWorkerThread.QueueInfo.INDEX_SPEC_INDEX))
                self.error_ = self.error_ or e
            finally:
                self.specQueue_.task_done()

    def _processQueueItem(self, item):
        msgType = item[SweepWorkerThread.QueueInfo.MESSAGE_TYPE]
        if msgType == SweepWorkerThread.QueueInfo.MessageTypes.END_SWEEP:
            self.sweepEnded_ = True
            return
        index = item[SweepWorkerThread.QueueInfo.INDEX_SPEC_INDEX]
        spec = item[SweepWorkerThread.QueueInfo.INDEX_SPEC]
        self.outcomes_[index] = evaluateSpec(index, spec, self.tolerances_)


class SweepSummary:
    """
    Aggregated sweep outcomes, ordered by spec index. Holds no timing, so two
    sweeps with the same parameters produce identical summaries.
    """
    def __init__(self, nmin, nmax, seed, outcomes):
        self.nmin_ = nmin
        self.nmax_ = nmax
        self.seed_ = seed
        self.outcomes_ = list(outcomes)

    def getCount(self):
        return len(self.outcomes_)

    def getNMin(self):
        return self.nmin_

    def getNMax(self):
        return self.nmax_

    def getSeed(self):
        return self.seed_

    def getOutcomes(self):
        return list(self.outcomes_)

    ##
    # @param self The SweepSummary instance.
    # @return Dict Conclusion -> count, with every conclusion present.
    def getConclusionCounts(self):
        counts = {conclusion: 0 for conclusion in Conclusion.ALL}
        for outcome in self.outcomes_:
            counts[outcome.getVerdict().getConclusion()] += 1
        return counts

    def getDefiniteCount(self):
        return sum(1 for o in self.outcomes_ if Conclusion.isDefinite(o.getVerdict().getConclusion()))

    def getUndeterminedRate(self):
        if not self.outcomes_:
            return 0.0
        return self.getConclusionCounts()[Conclusion.UNDETERMINED] / len(self.outcomes_)

    ##
    # @param self The SweepSummary instance.
    # @return Dict oracle dimension -> count, sorted by dimension.
    def getDimensionCounts(self):
        counts = {}
        for outcome in self.outcomes_:
            counts[outcome.getDimension()] = counts.get(outcome.getDimension(), 0) + 1
        return dict(sorted(counts.items()))

    ##
    # @param self The SweepSummary instance.
    # @return Indices of the specs whose definite verdict contradicts the oracle.
    def getDisagreements(self):
        return [o.getIndex() for o in self.outcomes_ if not o.agrees()]


def _checkParams(count, nmin, nmax, workers):
    if count < 1:
        raise InvalidSweepParamsException('count must be at least 1, got %d' % count)
    if not MIN_LEVELS <= nmin <= nmax <= MAX_LEVELS:
        raise InvalidSweepParamsException('Need %d <= nmin <= nmax <= %d, got nmin = %d, nmax = %d'
                                          % (MIN_LEVELS, MAX_LEVELS, nmin, nmax))
    if workers < 1:
        raise InvalidSweepParamsException('workers must be at least 1, got %d' % workers)


##
# @param count Number of specs M.
# @param nmin Smallest N.
# @param nmax Largest N.
# @param seed Seed of the numpy Generator; the only source of randomness.
# @param workers Number of SweepWorkerThread evaluating specs.
# @param tolerances Tolerances (defaults when None).
# @return The SweepSummary.
def runSweep(count, nmin, nmax, seed=0, workers=1, tolerances=None):
    _checkParams(count, nmin, nmax, workers)
    tolerances = tolerances or Tolerances()
    rng = np.random.default_rng(seed)
    specs = [generateRandomSpec(rng, nmin, nmax, 'sweep-%d' % i) for i in range(count)]
    logger.info('Sweep of %d specs, N in [%d, %d], seed %d, %d worker(s)', count, nmin, nmax, seed, workers)

    outcomes = [None] * count
    if workers == 1:
        for index, spec in enumerate(specs):
            outcomes[index] = evaluateSpec(index, spec, tolerances)
    else:
        specQueue = Queue()
        threads = [SweepWorkerThread(specQueue, outcomes, tolerances) for _ in range(workers)]
        for thread in threads:
            thread.start()
        QueueInfo = SweepWorkerThread.QueueInfo
        for index, spec in enumerate(specs):
            specQueue.put({QueueInfo.MESSAGE_TYPE: QueueInfo.MessageTypes.EVALUATE_SPEC,
                           QueueInfo.INDEX_SPEC_INDEX: index,
                           QueueInfo.INDEX_SPEC: spec})
        for _ in threads:
            specQueue.put({QueueInfo.MESSAGE_TYPE: QueueInfo.MessageTypes.END_SWEEP})
        for thread in threads:
            thread.join()
        errors = [t.getError() for t in threads if t.getError() is not None]
        if errors:
            raise errors[0]

    summary = SweepSummary(nmin, nmax, seed, outcomes)
    logger.info('Sweep finished: %d definite, %d disagreement(s)', summary.getDefiniteCount(),
                len(summary.getDisagreements()))
    return summary
