# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
import math
import unittest

import numpy as np
from hypothesis import given, settings

from dipole_controllability.lie_closure import commutator
from dipole_controllability.system_model import BasisKind
from dipole_controllability.system_model import IndexOutOfRangeException
from dipole_controllability.system_model import InvalidSpecException
from dipole_controllability.system_model import NotSkewHermitianException
from dipole_controllability.system_model import SkewHermMatrix
from dipole_controllability.system_model import SystemSpec
from dipole_controllability.system_model import basisElement
from dipole_controllability.system_model import buildH0
from dipole_controllability.system_model import buildH1
from dipole_controllability.system_model import deriveParams

from tests.strategies import systemSpecs


class SystemSpecTestCase(unittest.TestCase):

    def testInvalidSpecs(self):
        with self.assertRaises(InvalidSpecException):
            SystemSpec([0.0], [])
        with self.assertRaises(InvalidSpecException):
            SystemSpec([0.0, 1.0, 2.0], [1.0])
        with self.assertRaises(InvalidSpecException):
            SystemSpec([0.0, 2.0, 1.0], [1.0, 1.0])
        with self.assertRaises(InvalidSpecException):
            SystemSpec([0.0, float('nan')], [1.0])
        with self.assertRaises(InvalidSpecException):
            SystemSpec([0.0, 1.0], [float('inf')])
        with self.assertRaises(InvalidSpecException):
            SystemSpec.fromSpacings([1.0, -0.5], 0.0, [1.0, 1.0])

    def testFromSpacings(self):
        spec = SystemSpec.fromSpacings([1.0, 2.0], 0.5, [1.0, 1.0])
        self.assertEqual(spec.getLevels(), (0.5, 1.5, 3.5))
        self.assertEqual(spec.getN(), 3)

    def testBoundaryDipoles(self):
        spec = SystemSpec([0.0, 1.0, 3.0], [1.0, 2.0])
        self.assertEqual(spec.getDipole(0), 0.0)
        self.assertEqual(spec.getDipole(1), 1.0)
        self.assertEqual(spec.getDipole(2), 2.0)
        self.assertEqual(spec.getDipole(3), 0.0)
        self.assertEqual(spec.getLevel(3), 3.0)

    def testEquality(self):
        self.assertEqual(SystemSpec([0, 1], [1], 'a'), SystemSpec([0.0, 1.0], [1.0], 'a'))
        self.assertNotEqual(SystemSpec([0, 1], [1]), SystemSpec([0, 1], [-1]))
        self.assertEqual(SystemSpec([0, 1], [2]).withScaledDipoles(0.5), SystemSpec([0, 1], [1]))
        self.assertEqual(SystemSpec([0, 1], [1]).withShiftedLevels(2.0).getLevels(), (2.0, 3.0))


class DerivedParamsTestCase(unittest.TestCase):

    def testHarmonicOscillator(self):
        params = deriveParams(SystemSpec([0, 1, 2, 3], [1, math.sqrt(2), math.sqrt(3)]))
        self.assertEqual(params.getMu(), (1.0, 1.0, 1.0))
        for value, expected in zip(params.getV(), (0.0, 0.0, 4.0)):
            self.assertAlmostEqual(value, expected, places=12)
        self.assertTrue(params.isEquallySpaced())

    def testFullyDegenerate(self):
        params = deriveParams(SystemSpec([0, 0, 0, 0], [1, 1, 1]))
        self.assertEqual(params.getMu(), (0.0, 0.0, 0.0))
        self.assertTrue(params.allMuZero())
        self.assertTrue(params.traceIsZero())

    def testAlternatingSpacings(self):
        params = deriveParams(SystemSpec([0, 1, 3, 4], [1, 1, 1]))
        self.assertEqual(params.getMu(), (1.0, 2.0, 1.0))
        self.assertEqual(params.getV(), (1.0, 0.0, 1.0))
        self.assertEqual(params.muClasses(), [[1, 3], [2]])
        self.assertEqual(params.vClasses(), [[1, 3], [2]])
        self.assertFalse(params.isEquallySpaced())

    def testHarmonicParameters(self):
        params = deriveParams(SystemSpec([0, 1, 2, 3], [1, 1, 2]))
        self.assertEqual(params.getV(), (1.0, -3.0, 7.0))

    def testDipoleSigns(self):
        params = deriveParams(SystemSpec([0, 1, 2, 3], [1, 2, -1]))
        self.assertTrue(params.dipolesEqualUpToSign(1, 3))
        self.assertFalse(params.dipolesEqualUpToSign(1, 2))
        self.assertTrue(params.dipolesEqualUpToSign(0, 4))

    def testDipoleZeroWithinTolerance(self):
        params = deriveParams(SystemSpec([0, 1, 3, 4], [1e-15, 1, 1]), 1e-9)
        self.assertTrue(params.dipoleIsZero(1))
        self.assertFalse(params.dipoleIsZero(2))

    def testTrace(self):
        self.assertTrue(deriveParams(SystemSpec([-1, 0, 1], [1, 1])).traceIsZero())
        params = deriveParams(SystemSpec([-1, 0, 1.5], [1, 1]))
        self.assertFalse(params.traceIsZero())
        self.assertEqual(params.getTraceH0(), 0.5)

    def testToleranceAndFragility(self):
        equal = deriveParams(SystemSpec([0, 1, 2 + 1e-10], [1, 1]), 1e-9)
        self.assertTrue(equal.isEquallySpaced())
        self.assertEqual(equal.fragileComparisons(), [])

        fragile = deriveParams(SystemSpec([0, 1, 2 + 5e-9], [1, 1]), 1e-9)
        self.assertFalse(fragile.isEquallySpaced())
        self.assertIn('mu_1 = mu_2', fragile.fragileComparisons())

        clear = deriveParams(SystemSpec([0, 1, 3], [1, 1]), 1e-9)
        self.assertEqual(clear.fragileComparisons(), [])

        nearZeroDipole = deriveParams(SystemSpec([0, 1, 3, 4], [5e-9, 1, 1]), 1e-9)
        self.assertFalse(nearZeroDipole.dipoleIsZero(1))
        self.assertEqual(nearZeroDipole.fragileComparisons(), ['d_1 = 0'])

    def testSpacingToleranceIgnoresEnergyOffset(self):
        for shift in (0.0, 1e3, 1e5):
            params = deriveParams(SystemSpec([0, 1, 2 + 1e-7, 3], [1, 1, 1]).withShiftedLevels(shift), 1e-9)
            self.assertFalse(params.muEqual(1, 2))
            self.assertFalse(params.muEqual(2, 3))
            self.assertFalse(params.isEquallySpaced())
        params = deriveParams(SystemSpec([0, 1, 2, 3], [1, 1, 1]).withShiftedLevels(1e5 + 0.1), 1e-9)
        self.assertTrue(params.isEquallySpaced())

    def testInvalidTolerance(self):
        with self.assertRaises(InvalidSpecException):
            deriveParams(SystemSpec([0, 1], [1]), 0.0)


class SkewHermMatrixTestCase(unittest.TestCase):

    def testRejectsNonSkewHermitian(self):
        with self.assertRaises(NotSkewHermitianException):
            SkewHermMatrix([[1.0, 0.0], [0.0, 0.0]])
        with self.assertRaises(NotSkewHermitianException):
            SkewHermMatrix([[0.0, 1.0, 0.0]])
        with self.assertRaises(NotSkewHermitianException):
            SkewHermMatrix.identity(2) * 1j

    def testVectorizationLayout(self):
        m = SkewHermMatrix([[1j, 2 + 3j], [-2 + 3j, -0.5j]])
        np.testing.assert_array_equal(m.vectorize(), [1.0, -0.5, 2.0, 3.0])
        self.assertTrue(SkewHermMatrix.fromVector(m.vectorize(), 2).isClose(m))

    def testFromMatrixProjects(self):
        m = SkewHermMatrix.fromMatrix([[1.0, 2.0], [0.0, 1j]])
        np.testing.assert_allclose(m.getEntries(), [[0.0, 1.0], [-1.0, 1j]])

    def testArithmetic(self):
        x = basisElement(BasisKind.X, 1, 2, 2)
        y = basisElement(BasisKind.Y, 1, 2, 2)
        self.assertTrue((x + y - y).isClose(x))
        self.assertTrue((-x + x).isZero())
        self.assertTrue((2 * x).isClose(x + x))
        self.assertAlmostEqual(x.norm(), math.sqrt(2.0))
        self.assertEqual(SkewHermMatrix.identity(3).trace(), 3j)

    def testEntriesAreReadOnly(self):
        m = SkewHermMatrix.zeros(2)
        with self.assertRaises(ValueError):
            m.getEntries()[0, 0] = 1j


class BuildersTestCase(unittest.TestCase):

    def testBuildH0(self):
        np.testing.assert_array_equal(buildH0(SystemSpec([0, 1], [1])).getEntries(), np.diag([0, 1j]))
        self.assertTrue(buildH0(SystemSpec([1, 1, 1, 1], [1, 1, 1])).isClose(SkewHermMatrix.identity(4)))
        np.testing.assert_array_equal(buildH0(SystemSpec([-1, 0, 2], [1, 1])).getEntries(), np.diag([-1j, 0, 2j]))

    def testBuildH1(self):
        np.testing.assert_array_equal(buildH1(SystemSpec([0, 1], [1])).getEntries(), [[0, 1j], [1j, 0]])
        np.testing.assert_array_equal(buildH1(SystemSpec([0, 1, 2], [1, 2])).getEntries(),
                                      [[0, 1j, 0], [1j, 0, 2j], [0, 2j, 0]])
        expected = 1j * (np.eye(4, k=1) + np.eye(4, k=-1))
        np.testing.assert_array_equal(buildH1(SystemSpec([0, 1, 2, 3], [1, 1, 1])).getEntries(), expected)

    def testBasisElements(self):
        np.testing.assert_array_equal(basisElement(BasisKind.X, 1, 2, 2).getEntries(), [[0, 1], [-1, 0]])
        np.testing.assert_array_equal(basisElement(BasisKind.Y, 1, 2, 2).getEntries(), [[0, 1j], [1j, 0]])
        np.testing.assert_array_equal(basisElement(BasisKind.H, 1, None, 3).getEntries(), np.diag([1j, -1j, 0]))

    def testBasisElementRanges(self):
        with self.assertRaises(IndexOutOfRangeException):
            basisElement(BasisKind.X, 2, 1, 3)
        with self.assertRaises(IndexOutOfRangeException):
            basisElement(BasisKind.Y, 1, 4, 3)
        with self.assertRaises(IndexOutOfRangeException):
            basisElement(BasisKind.H, 3, None, 3)

    def testCommutationRelations(self):
        x12 = basisElement(BasisKind.X, 1, 2, 2)
        y12 = basisElement(BasisKind.Y, 1, 2, 2)
        self.assertTrue(commutator(x12, y12).isClose(2 * basisElement(BasisKind.H, 1, None, 2)))
        self.assertTrue(commutator(x12, x12).isZero())

        spec = SystemSpec([0, 1, 3], [1, 2])
        x = basisElement(BasisKind.X, 1, 2, 3)
        y = basisElement(BasisKind.Y, 1, 2, 3)
        self.assertTrue(commutator(buildH0(spec), x).isClose(-1.0 * y))

    def testEquallySpacedCommutator(self):
        spec = SystemSpec([0, 2, 4, 6], [1, 3, 2])
        expected = SkewHermMatrix.zeros(4)
        for n, d in enumerate(spec.getDipoles(), 1):
            expected = expected + 2.0 * d * basisElement(BasisKind.X, n, n + 1, 4)
        self.assertTrue(commutator(buildH0(spec), buildH1(spec)).isClose(expected))

    @settings(max_examples=100, deadline=None)
    @given(systemSpecs(2, 6))
    def testH1IsSumOfYElements(self, spec):
        N = spec.getN()
        h1 = buildH1(spec)
        expected = SkewHermMatrix.zeros(N)
        for n in range(1, N):
            expected = expected + spec.getDipole(n) * basisElement(BasisKind.Y, n, n + 1, N)
        self.assertTrue(h1.isClose(expected))
        self.assertEqual(h1.trace(), 0)

    @settings(max_examples=100, deadline=None)
    @given(systemSpecs(2, 6))
    def testVectorizationIsInvertible(self, spec):
        m = buildH0(spec) + buildH1(spec)
        self.assertEqual(len(m.vectorize()), spec.getN() ** 2)
        self.assertTrue(SkewHermMatrix.fromVector(m.vectorize(), spec.getN()).isClose(m))


if __name__ == '__main__':
    unittest.main()
