# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
import math
import unittest

from dipole_controllability.base import AlgebraTag, Conclusion, RuleTag
from dipole_controllability.criteria_engine import checkTheorem4
from dipole_controllability.criteria_engine import fullVerdict
from dipole_controllability.model_zoo import MODEL_NAMES
from dipole_controllability.model_zoo import InvalidModelParamsException
from dipole_controllability.model_zoo import ModelParams
from dipole_controllability.model_zoo import Theorem4Formula
from dipole_controllability.model_zoo import makeModel
from dipole_controllability.model_zoo import theorem4Family
from dipole_controllability.model_zoo import theorem4FamilyV
from dipole_controllability.report import oracleFor
from dipole_controllability.system_model import deriveParams


class ModelsTestCase(unittest.TestCase):

    def testNames(self):
        self.assertEqual(len(MODEL_NAMES), 8)
        self.assertIn('coupled_two_level', MODEL_NAMES)

    def testMorse(self):
        spec = makeModel(ModelParams('morse', 4, B=0.1))
        for mu, expected in zip(deriveParams(spec).getMu(), (0.9, 0.8, 0.7)):
            self.assertAlmostEqual(mu, expected, places=12)
        self.assertEqual(spec.getDipoles(), (1.0, 1.0, 1.0))
        with self.assertRaises(InvalidModelParamsException):
            makeModel(ModelParams('morse', 4, B=0.5))
        with self.assertRaises(InvalidModelParamsException):
            makeModel(ModelParams('morse', 4, B=0.0))

    def testBox(self):
        spec = makeModel(ModelParams('box', 4))
        self.assertEqual(spec.getLevels(), (1.0, 4.0, 9.0, 16.0))
        self.assertEqual(deriveParams(spec).getMu(), (3.0, 5.0, 7.0))
        self.assertEqual(fullVerdict(spec).getConclusion(), Conclusion.COMPLETELY_CONTROLLABLE)
        with self.assertRaises(InvalidModelParamsException):
            makeModel(ModelParams('box', 4, C=-1.0))

    def testAtom(self):
        spec = makeModel(ModelParams('atom', 3, Z=2))
        self.assertAlmostEqual(spec.getLevel(1), -13.9 * 4)
        self.assertAlmostEqual(spec.getLevel(2), -13.9)
        self.assertAlmostEqual(spec.getLevel(3), -13.9 * 4 / 9)
        verdict = fullVerdict(spec)
        self.assertEqual(verdict.getConclusion(), Conclusion.COMPLETELY_CONTROLLABLE)
        self.assertEqual(verdict.getHeadline().getTag(), RuleTag.THEOREM1)
        with self.assertRaises(InvalidModelParamsException):
            makeModel(ModelParams('atom', 3, Z=0.5))

    def testTruncatedHarmonicOscillator(self):
        spec = makeModel(ModelParams('truncated_harmonic', 3))
        self.assertEqual(spec.getLevels(), (0.5, 1.5, 2.5))
        self.assertEqual(spec.getDipoles(), (1.0, math.sqrt(2.0)))
        self.assertEqual(fullVerdict(makeModel(ModelParams('truncated_harmonic', 5))).getConclusion(),
                         Conclusion.COMPLETELY_CONTROLLABLE)

    def testCoupledOscillators(self):
        spec = makeModel(ModelParams('coupled_oscillators', 3, variant='d1'))
        self.assertEqual(spec.getLevels(), (0.0, 1.0, 2.0, 3.5, 4.5, 5.5))
        self.assertEqual(spec.getDipoles(), (1.0, math.sqrt(2.0), 1.0, 1.0, math.sqrt(2.0)))
        spec = makeModel(ModelParams('coupled_oscillators', 3, variant='d2', d=0.5))
        self.assertEqual(spec.getDipoles(), (1.0, 1.0, 0.5, 1.0, 1.0))
        with self.assertRaises(InvalidModelParamsException):
            makeModel(ModelParams('coupled_oscillators', 2, delta=0.0))
        with self.assertRaises(InvalidModelParamsException):
            makeModel(ModelParams('coupled_oscillators', 2, variant='d3'))

    def testDegenerateUpper(self):
        spec = makeModel(ModelParams('degenerate_upper', 4))
        self.assertEqual(spec.getLevels(), (0.0, 1.0, 1.0, 1.0))
        verdict = fullVerdict(spec)
        self.assertEqual(verdict.getConclusion(), Conclusion.COMPLETELY_CONTROLLABLE)
        self.assertEqual(oracleFor(spec).getDimension(), 16)

    def testAlternatingOdd(self):
        spec = makeModel(ModelParams('alternating_odd', 2, freeSpacings=[1.5]))
        self.assertEqual(deriveParams(spec).getMu(), (2.0, 1.0, 1.5, 1.0))
        self.assertEqual(fullVerdict(spec).getHeadline().getTag(), RuleTag.THEOREM1)

        mirrored = makeModel(ModelParams('alternating_odd', 2, freeSpacings=[1.5], mirrored=True))
        self.assertEqual(deriveParams(mirrored).getMu(), (1.0, 1.5, 1.0, 2.0))
        self.assertEqual(fullVerdict(mirrored).getHeadline().getTag(), RuleTag.THEOREM1_MIRRORED)

        seeded = makeModel(ModelParams('alternating_odd', 3, seed=7))
        self.assertEqual(seeded, makeModel(ModelParams('alternating_odd', 3, seed=7)))
        self.assertEqual(fullVerdict(seeded).getConclusion(), Conclusion.COMPLETELY_CONTROLLABLE)

        with self.assertRaises(InvalidModelParamsException):
            makeModel(ModelParams('alternating_odd', 2, freeSpacings=[2.0]))

    def testCoupledTwoLevel(self):
        small = makeModel(ModelParams('coupled_two_level', 2))
        self.assertEqual(deriveParams(small).getMu(), (1.0, 2.0, 1.0))
        verdict = fullVerdict(small)
        self.assertEqual(verdict.getConclusion(), Conclusion.NOT_CONTROLLABLE)
        self.assertEqual(oracleFor(small).getIdentification().getTag(), AlgebraTag.SP2_PLUS_U1)

        larger = makeModel(ModelParams('coupled_two_level', 3, freeSpacings=[1.5]))
        self.assertEqual(deriveParams(larger).getMu(), (1.0, 2.0, 1.0, 1.5, 1.0))
        verdict = fullVerdict(larger)
        self.assertEqual(verdict.getConclusion(), Conclusion.COMPLETELY_CONTROLLABLE)
        self.assertIn((2, 2), [(f.getP(), f.getK()) for f in verdict.getProvenance()])
        self.assertEqual(oracleFor(larger).getDimension(), 36)

    def testInvalidParams(self):
        with self.assertRaises(InvalidModelParamsException):
            ModelParams('rotor', 4)
        with self.assertRaises(InvalidModelParamsException):
            ModelParams('morse', 2.5)
        with self.assertRaises(InvalidModelParamsException):
            makeModel(ModelParams('morse', 1))
        with self.assertRaises(InvalidModelParamsException):
            makeModel(ModelParams('box', 4, dipoles=[1.0, 2.0]))

    def testCustomDipoles(self):
        spec = makeModel(ModelParams('morse', 3, dipoles=[1.0, -2.0], groundEnergy=-1.0))
        self.assertEqual(spec.getDipoles(), (1.0, -2.0))
        self.assertEqual(spec.getLevel(1), -1.0)


class Theorem4FamilyTestCase(unittest.TestCase):

    def testSmallSystems(self):
        spec = theorem4Family(3, 1.0)
        self.assertEqual(spec.getDipoles(), (1.0, 1.0))
        self.assertEqual(oracleFor(spec).getDimension(), 4)
        spec = theorem4Family(4, 1.0)
        self.assertAlmostEqual(spec.getDipole(2), 2.0 / math.sqrt(3.0))
        self.assertAlmostEqual(spec.getDipole(3), 1.0)
        self.assertIsNotNone(checkTheorem4(spec))
        self.assertEqual(oracleFor(spec).getDimension(), 4)
        self.assertAlmostEqual(deriveParams(spec).vAt(1), theorem4FamilyV(4, 1.0))

    def testClosedFormHasNoLargeMembers(self):
        self.assertIsNone(theorem4Family(5, 1.0, Theorem4Formula.CLOSED_FORM))
        self.assertIsNone(theorem4Family(6, 1.0, Theorem4Formula.CLOSED_FORM))
        self.assertIsNotNone(theorem4Family(4, 1.0, Theorem4Formula.CLOSED_FORM))

    def testBoundaryConsistentFamily(self):
        for N in range(5, 8):
            spec = theorem4Family(N, 1.0)
            params = deriveParams(spec)
            self.assertTrue(params.allVEqual())
            for n in range(1, N):
                self.assertAlmostEqual(params.vAt(n), 2.0 / (N - 1))
            verdict = fullVerdict(spec)
            self.assertEqual(verdict.getConclusion(), Conclusion.NOT_CONTROLLABLE)
            self.assertEqual(verdict.getHeadline().getTag(), RuleTag.THEOREM4)
            self.assertEqual(oracleFor(spec).getDimension(), 4)

    def testCommonVDecreases(self):
        values = [theorem4FamilyV(N, 1.0) for N in range(3, 10)]
        self.assertEqual(values, sorted(values, reverse=True))
        self.assertEqual(len(set(values)), len(values))

    def testInvalid(self):
        with self.assertRaises(InvalidModelParamsException):
            theorem4Family(2, 1.0)
        with self.assertRaises(InvalidModelParamsException):
            theorem4Family(4, -1.0)
        with self.assertRaises(InvalidModelParamsException):
            theorem4Family(4, 1.0, 'other')


if __name__ == '__main__':
    unittest.main()
