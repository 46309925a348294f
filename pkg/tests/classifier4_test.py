# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
import math
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from dipole_controllability.base import AlgebraTag, Conclusion, RuleTag, Tolerances
from dipole_controllability.classifier4 import TABLE_ROWS
from dipole_controllability.classifier4 import CaseTag
from dipole_controllability.classifier4 import NotFourLevelException
from dipole_controllability.classifier4 import VSubcase
from dipole_controllability.classifier4 import classify4
from dipole_controllability.classifier4 import fourLevelBasisChange
from dipole_controllability.report import reconstructTable
from dipole_controllability.system_model import SystemSpec
from dipole_controllability.system_model import deriveParams


class Classify4TestCase(unittest.TestCase):

    def testAllSpacingsDistinct(self):
        case, verdict = classify4(SystemSpec([0, 1, 3, 6], [1, 1, 1]))
        self.assertEqual(case.getCaseTag(), CaseTag.MU_ALL_DISTINCT)
        self.assertIs(case.getTableRow(), TABLE_ROWS[0])
        self.assertEqual(verdict.getConclusion(), Conclusion.COMPLETELY_CONTROLLABLE)
        self.assertEqual(verdict.getHeadline().getTag(), RuleTag.CLASSIFIER4)
        self.assertEqual(str(case.getExpectedAlgebra()), 'u(4)')

    def testOuterSpacingsEqual(self):
        case, verdict = classify4(SystemSpec([0, 1, 3, 4], [1, 1, 1]))
        self.assertEqual(case.getCaseTag(), CaseTag.MU1_EQ_MU3_NE_MU2_NONZERO)
        self.assertTrue(case.getDCondition())
        self.assertIs(case.getTableRow(), TABLE_ROWS[4])
        self.assertEqual(verdict.getConclusion(), Conclusion.NOT_CONTROLLABLE)
        self.assertEqual(verdict.getExpectedDimension(), 11)
        self.assertEqual(case.getExpectedAlgebra().getTag(), AlgebraTag.SP2_PLUS_U1)

        case, verdict = classify4(SystemSpec([0, 1, 3, 4], [1, 1, 2]))
        self.assertFalse(case.getDCondition())
        self.assertIs(case.getTableRow(), TABLE_ROWS[3])
        self.assertEqual(verdict.getConclusion(), Conclusion.COMPLETELY_CONTROLLABLE)

    def testDegenerateMiddleSpacing(self):
        case, verdict = classify4(SystemSpec([0, 1, 1, 2], [1, 1, 2]))
        self.assertEqual(case.getCaseTag(), CaseTag.MU1_EQ_MU3_NE_MU2_ZERO)
        self.assertIs(case.getTableRow(), TABLE_ROWS[3])
        self.assertEqual(verdict.getConclusion(), Conclusion.COMPLETELY_CONTROLLABLE)

    def testEqualSpacingSubcases(self):
        expectations = [
            ((1, 1, 2), VSubcase.V_ALL_DISTINCT, TABLE_ROWS[5]),
            ((math.sqrt(3), math.sqrt(2), 1), VSubcase.V1_NE_V2_EQ_V3, TABLE_ROWS[6]),
            ((1, math.sqrt(2), math.sqrt(3)), VSubcase.V1_EQ_V2_NE_V3, TABLE_ROWS[7]),
            ((2, 1, 2), VSubcase.V1_EQ_V3_NE_V2, TABLE_ROWS[8]),
            ((math.sqrt(3), 2, math.sqrt(3)), VSubcase.V_ALL_EQUAL, TABLE_ROWS[9]),
        ]
        for dipoles, subcase, row in expectations:
            case, _ = classify4(SystemSpec([0, 1, 2, 3], dipoles))
            self.assertEqual(case.getCaseTag(), CaseTag.EQUAL_SPACING_WITH_V_SUBCASE)
            self.assertEqual(case.getVSubcase(), subcase, dipoles)
            self.assertIs(case.getTableRow(), row, dipoles)

    def testHarmonicAllVEqual(self):
        case, verdict = classify4(SystemSpec([0, 1, 2, 3], [math.sqrt(3), 2, math.sqrt(3)]))
        self.assertEqual(verdict.getConclusion(), Conclusion.NOT_CONTROLLABLE)
        self.assertEqual(case.getExpectedAlgebra().getTag(), AlgebraTag.U2_LIKE)
        self.assertEqual(case.describe(), 'equal_spacing_with_v_subcase/v_all_equal')

    def testFullyDegenerate(self):
        case, verdict = classify4(SystemSpec([1, 1, 1, 1], [1, 2, 3]))
        self.assertEqual(case.getCaseTag(), CaseTag.FULLY_DEGENERATE)
        self.assertEqual(verdict.getExpectedDimension(), 2)

    def testDecomposable(self):
        case, verdict = classify4(SystemSpec([0, 1, 3, 6], [1, 0, 1]))
        self.assertEqual(case.getCaseTag(), CaseTag.DECOMPOSABLE)
        self.assertIsNone(case.getTableRow())
        self.assertIsNone(case.getExpectedAlgebra())
        self.assertEqual(verdict.getConclusion(), Conclusion.NOT_CONTROLLABLE)

    def testZeroTrace(self):
        case, verdict = classify4(SystemSpec([-2, -1, 1, 2], [1, 1, 1]))
        self.assertEqual(verdict.getConclusion(), Conclusion.NOT_CONTROLLABLE)
        self.assertEqual(case.getExpectedAlgebra().getTag(), AlgebraTag.SP2)
        self.assertEqual(verdict.getExpectedDimension(), 10)

        case, verdict = classify4(SystemSpec([-3, -1, 0, 4], [1, 1, 1]))
        self.assertEqual(verdict.getConclusion(), Conclusion.CONTROLLABLE_UP_TO_PHASE)
        self.assertEqual(str(case.getExpectedAlgebra()), 'su(4)')

    def testNotFourLevels(self):
        with self.assertRaises(NotFourLevelException):
            classify4(SystemSpec([0, 1, 3], [1, 1]))
        with self.assertRaises(NotFourLevelException):
            classify4(SystemSpec([0, 1, 3, 4, 6], [1, 1, 1, 1]))

    def testBasisChange(self):
        Q = fourLevelBasisChange(-1)
        self.assertEqual(Q[3][3], -1.0)
        self.assertEqual(Q[0][1], 1.0)
        with self.assertRaises(ValueError):
            fourLevelBasisChange(0)


class TableTestCase(unittest.TestCase):

    def testRows(self):
        self.assertEqual(len(TABLE_ROWS), 11)
        self.assertEqual(sum(len(row.getRepresentatives()) for row in TABLE_ROWS), 18)
        for row in TABLE_ROWS:
            self.assertEqual(row.isControllable(), row.getDimension() == 16)

    def testReconstructTable(self):
        checks = reconstructTable(Tolerances())
        self.assertEqual(len(checks), 18)
        self.assertEqual({id(check.getRow()) for check in checks}, {id(row) for row in TABLE_ROWS})
        for check in checks:
            self.assertTrue(check.isOk(), check.getSpec())


class VSubcaseEquivalenceTestCase(unittest.TestCase):

    @settings(max_examples=200, deadline=None)
    @given(st.sampled_from([0.5, 1.0, 1.5, 2.0, math.sqrt(2.0), math.sqrt(3.0)]),
           st.sampled_from([0.5, 1.0, 1.5, 2.0, math.sqrt(2.0), math.sqrt(3.0)]),
           st.sampled_from([0.5, 1.0, 1.5, 2.0, math.sqrt(2.0), math.sqrt(3.0)]),
           st.sampled_from([-1.0, 1.0]))
    def testOuterVEqualIffOuterDipolesEqual(self, d1, d2, d3, sign):
        spec = SystemSpec([0, 1, 2, 3], [d1, d2, sign * d3])
        case, _ = classify4(spec)
        outerEqual = math.isclose(d1 * d1, d3 * d3, rel_tol=1e-9)
        middleDiffers = not math.isclose(d2 * d2, 4.0 * d1 * d1 / 3.0, rel_tol=1e-9)
        self.assertEqual(case.getVSubcase() == VSubcase.V1_EQ_V3_NE_V2, outerEqual and middleDiffers)

    def testUnitDipoles(self):
        self.assertEqual(deriveParams(SystemSpec([0, 1, 2, 3], [1, 1, 1])).getV(), (1.0, 0.0, 1.0))
        case, _ = classify4(SystemSpec([0, 1, 2, 3], [1, 1, 1]))
        self.assertEqual(case.getVSubcase(), VSubcase.V1_EQ_V3_NE_V2)


if __name__ == '__main__':
    unittest.main()
