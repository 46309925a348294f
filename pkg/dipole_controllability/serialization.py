# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
"""
Module that serializes/deserializes system spec files and reports as Json documents.
Spec files are validated against schema/spec-file-schema.json with jsonschema.
"""
from functools import lru_cache
from io import StringIO
import json
import os

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from .base import ControllabilityException
from .system_model import InvalidSpecException, SystemSpec

SCHEMA_DIR = os.path.join(os.path.dirname(__file__), 'schema')
SPEC_FILE_SCHEMA = 'spec-file-schema.json'
REPORT_SCHEMA = 'report-schema.json'

#Json pretty-printing
INDENT = 4


##
# @param obj Python object to dump.
# @return The Json representation for this object.
def asJsonString(obj):
    """
    Get the Json representation for this object (sorted keys, so output is stable).
    """
    io = StringIO()
    json.dump(obj, io, sort_keys=True, indent=INDENT)
    return io.getvalue()


##
# @param text Json representation for an object.
# @return The Python object whose Json representation is text.
def fromJsonString(text):
    return json.loads(text)


##
# @param name Schema file name under SCHEMA_DIR.
# @return A Draft 2020-12 validator for the schema.
@lru_cache(maxsize=None)
def getValidator(name):
    with open(os.path.join(SCHEMA_DIR, name), 'r') as fp:
        schema = json.load(fp)
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


class SpecFileLoadException(ControllabilityException):
    """
    Exception class for an error loading a spec file: Json syntax, schema or semantic errors.
    """
    ##
    # @param self The SpecFileLoadException instance to construct.
    # @param msg Exception's error message.
    # @param field Offending field (Json path), or None.
    # @param line 1-based line of the offending text, or None.
    def __init__(self, msg, field=None, line=None):
        where = []
        if field:
            where.append("field '%s'" % field)
        if line:
            where.append('line %d' % line)
        text = msg if not where else '%s: %s' % (', '.join(where), msg)
        ControllabilityException.__init__(self, text)
        self.field_ = field
        self.line_ = line

    def getField(self):
        return self.field_

    def getLine(self):
        return self.line_


def _findLine(text, key):
    """
    1-based line where '"key"' first appears, or None.
    """
    if not key:
        return None
    needle = '"%s"' % key
    for number, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return number
    return None


class SpecFileSerializer:
    """
    Serializes a SystemSpec (and optional tolerances) in a versioned Json spec file.
    """
    class JSON:
        """
        Json-related constants.
        """
        CURRENT_VERSION = 1

        VERSION = 'version'
        NAME = 'name'
        LEVELS = 'levels'
        SPACINGS = 'spacings'
        GROUND_ENERGY = 'ground_energy'
        DIPOLES = 'dipoles'
        TOLERANCES = 'tolerances'
        EPS_PARAM = 'eps_param'
        EPS_RANK = 'eps_rank'

    ##
    # @param self The SpecFileSerializer instance.
    # @param spec SystemSpec to dump.
    # @param fp File object where the Json document will be written.
    # @param tolerances Optional Tolerances to store in the file.
    def dump(self, spec, fp, tolerances=None):
        json.dump(self.dumpAsJsonMap(spec, tolerances), fp, sort_keys=True, indent=INDENT)
        fp.write('\n')

    ##
    # @param self The SpecFileSerializer instance.
    # @param spec SystemSpec to dump.
    # @param tolerances Optional Tolerances.
    # @return A "Json-compliant" dict in spec-file form (always with explicit levels).
    def dumpAsJsonMap(self, spec, tolerances=None):
        JSON = SpecFileSerializer.JSON
        specMap = {
            JSON.VERSION: JSON.CURRENT_VERSION,
            JSON.NAME: spec.getName() or '',
            JSON.LEVELS: list(spec.getLevels()),
            JSON.DIPOLES: list(spec.getDipoles()),
        }
        if tolerances is not None:
            specMap[JSON.TOLERANCES] = {JSON.EPS_PARAM: tolerances.getEpsParam(),
                                        JSON.EPS_RANK: tolerances.getEpsRank()}
        return specMap

    ##
    # @param self The SpecFileSerializer instance.
    # @param fp File object with the Json spec file.
    # @return Tuple (SystemSpec, file tolerances dict with 'eps_param'/'eps_rank' keys, possibly empty).
    def load(self, fp):
        return self.loads(fp.read())

    ##
    # @param self The SpecFileSerializer instance.
    # @param text Json spec file contents.
    # @return Tuple (SystemSpec, file tolerances dict).
    def loads(self, text):
        try:
            specMap = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecFileLoadException('invalid Json: %s' % e.msg, None, e.lineno)
        return self.loadFromJsonMap(specMap, text)

    ##
    # @param self The SpecFileSerializer instance.
    # @param specMap Parsed Json document.
    # @param text Original text, used to locate fields (may be None).
    # @return Tuple (SystemSpec, file tolerances dict).
    def loadFromJsonMap(self, specMap, text=None):
        JSON = SpecFileSerializer.JSON
        error = best_match(getValidator(SPEC_FILE_SCHEMA).iter_errors(specMap))
        if error is not None:
            field = self.__fieldOf(error)
            key = (field or '').split('/')[0].split('|')[0]
            raise SpecFileLoadException(error.message, field, _findLine(text or '', key))

        dipoles = specMap[JSON.DIPOLES]
        if JSON.LEVELS in specMap:
            levels = specMap[JSON.LEVELS]
            if len(dipoles) != len(levels) - 1:
                raise SpecFileLoadException('%d levels need %d dipoles, got %d' % (len(levels), len(levels) - 1,
                                                                                 len(dipoles)),
                                            JSON.DIPOLES, _findLine(text or '', JSON.DIPOLES))
        else:
            spacings = specMap[JSON.SPACINGS]
            if len(dipoles) != len(spacings):
                raise SpecFileLoadException('%d spacings need %d dipoles, got %d' % (len(spacings), len(spacings),
                                                                                   len(dipoles)),
                                            JSON.DIPOLES, _findLine(text or '', JSON.DIPOLES))
        name = specMap.get(JSON.NAME) or None
        try:
            if JSON.LEVELS in specMap:
                spec = SystemSpec(specMap[JSON.LEVELS], dipoles, name)
            else:
                spec = SystemSpec.fromSpacings(specMap[JSON.SPACINGS], specMap[JSON.GROUND_ENERGY], dipoles, name)
        except InvalidSpecException as e:
            field = JSON.LEVELS if JSON.LEVELS in specMap else JSON.SPACINGS
            if 'dipole' in str(e).lower():
                field = JSON.DIPOLES
            raise SpecFileLoadException(str(e), field, _findLine(text or '', field))
        return spec, dict(specMap.get(JSON.TOLERANCES, {}))

    def __fieldOf(self, error):
        """
        Field path of a schema error; for 'required' errors, the missing property.
        """
        path = '/'.join(str(p) for p in error.absolute_path)
        if error.validator == 'required' and isinstance(error.instance, dict):
            missing = [p for p in error.validator_value if p not in error.instance]
            if missing:
                return '/'.join(filter(None, [path, missing[0]]))
        if error.validator == 'oneOf' and not path:
            return 'levels|spacings'
        if error.validator == 'additionalProperties' and isinstance(error.instance, dict):
            allowed = error.schema.get('properties', {})
            extra = [p for p in error.instance if p not in allowed]
            if extra:
                return '/'.join(filter(None, [path, extra[0]]))
        return path or None


class ReportSerializer:
    """
    Serializes reports, four-level table reconstructions and sweep summaries.
    """
    ##
    # @param self The ReportSerializer instance.
    # @param report report.Report to dump.
    # @param fp File object.
    def dump(self, report, fp):
        fp.write(asJsonString(self.dumpAsJsonMap(report)))
        fp.write('\n')

    ##
    # @param self The ReportSerializer instance.
    # @param report report.Report to dump.
    # @return A "Json-compliant" dict following schema/report-schema.json.
    def dumpAsJsonMap(self, report):
        params = report.getParams()
        verdict = report.getVerdict()
        reportMap = {
            'version': SpecFileSerializer.JSON.CURRENT_VERSION,
            'spec': SpecFileSerializer().dumpAsJsonMap(report.getSpec(), report.getTolerances()),
            'derived': {
                'mu': list(params.getMu()),
                'v': list(params.getV()),
                'trace_h0': params.getTraceH0(),
                'equally_spaced': params.isEquallySpaced(),
                'fragile': params.fragileComparisons(),
            },
            'verdict': {
                'conclusion': verdict.getConclusion(),
                'provenance': [{'rule': f.getTag(), 'p': f.getP(), 'k': f.getK(), 'detail': f.getDetail()}
                               for f in verdict.getProvenance()],
                'notes': verdict.getNotes(),
                'expected_dimension': verdict.getExpectedDimension(),
            },
            'oracle': None,
            'classification': None,
            'agreement': report.getAgreement(),
            'timing': {
                'rules_seconds': report.getRulesSeconds(),
                'oracle_seconds': report.getOracleSeconds(),
            },
        }
        oracle = report.getOracle()
        if oracle is not None:
            reportMap['oracle'] = {
                'dimension': oracle.getDimension(),
                'identification': str(oracle.getIdentification()),
                'contains_identity': oracle.containsIdentity(),
                'generations': oracle.getGenerations(),
                'witnesses_verified': report.getWitnessesVerified(),
            }
        case = report.getFourLevelCase()
        if case is not None:
            row = case.getTableRow()
            algebra = case.getExpectedAlgebra()
            reportMap['classification'] = {
                'case': case.getCaseTag(),
                'v_subcase': case.getVSubcase(),
                'd_condition': case.getDCondition(),
                'table_row': row.getLabel() if row is not None else None,
                'expected_algebra': str(algebra) if algebra is not None else None,
            }
        return reportMap

    ##
    # @param self The ReportSerializer instance.
    # @param rows List of report.TableCheck.
    # @return A "Json-compliant" list with one entry per verified representative.
    def dumpTableAsJsonList(self, rows):
        return [{'row': check.getRow().getLabel(),
                 'system': check.getRow().getSystem(),
                 'levels': list(check.getSpec().getLevels()),
                 'dipoles': list(check.getSpec().getDipoles()),
                 'controllable': check.getRow().isControllable(),
                 'expected_dimension': check.getRow().getDimension(),
                 'matched_row': check.getMatchedRow(),
                 'conclusion': check.getVerdict().getConclusion(),
                 'oracle_dimension': check.getOracle().getDimension(),
                 'identification': str(check.getOracle().getIdentification()),
                 'ok': check.isOk()} for check in rows]

    ##
    # @param self The ReportSerializer instance.
    # @param summary sweep.SweepSummary.
    # @return A "Json-compliant" dict; it holds no timing so equal seeds give equal documents.
    def dumpSweepAsJsonMap(self, summary):
        return {
            'count': summary.getCount(),
            'nmin': summary.getNMin(),
            'nmax': summary.getNMax(),
            'seed': summary.getSeed(),
            'conclusions': summary.getConclusionCounts(),
            'definite': summary.getDefiniteCount(),
            'undetermined_rate': round(summary.getUndeterminedRate(), 6),
            'oracle_dimensions': {str(k): v for k, v in summary.getDimensionCounts().items()},
            'disagreements': summary.getDisagreements(),
        }
