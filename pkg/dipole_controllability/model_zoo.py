# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
"""
Named example systems: Morse oscillator, particle in a box, one-electron atom,
truncated harmonic oscillator, coupled oscillators, degenerate and
alternating spacing patterns, plus the all-v-equal dipole family.
"""
import math

import numpy as np

from .base import ControllabilityException
from .system_model import InvalidSpecException, SystemSpec


class InvalidModelParamsException(ControllabilityException):
    """
    A model parameter is outside its documented range.
    """
    pass


#Ground-state energy used by the atom model, in eV (the Rydberg energy is 13.6 eV)
ATOM_ENERGY_CONSTANT = -13.9


class ModelParams:
    """
    Model name, size (N, or l for the composite models) and model-specific options.
    """
    ##
    # @param self The ModelParams to construct.
    # @param model One of MODEL_NAMES.
    # @param size N for the single-chain models; l for coupled_oscillators (N = 2l),
    #        coupled_two_level (N = 2l) and alternating_odd (N = 2l + 1).
    # @param options Model-specific scalars: B (morse), C (box), Z (atom), delta, variant,
    #        d, mu (coupled_oscillators), lower, upper (degenerate_upper), commonSpacing,
    #        uniqueSpacing, freeSpacings, mirrored, seed (alternating_odd, coupled_two_level),
    #        dipoles, groundEnergy.
    def __init__(self, model, size, **options):
        if model not in MODEL_NAMES:
            raise InvalidModelParamsException('Unknown model %r, expected one of %s' % (model, ', '.join(MODEL_NAMES)))
        if size is None or int(size) != size:
            raise InvalidModelParamsException('Model size must be an integer, got %r' % (size,))
        self.model_ = model
        self.size_ = int(size)
        self.options_ = {k: v for k, v in options.items() if v is not None}

    def getModel(self):
        return self.model_

    def getSize(self):
        return self.size_

    def get(self, name, default=None):
        return self.options_.get(name, default)

    def __repr__(self):
        return 'ModelParams(%r, %d, %r)' % (self.model_, self.size_, self.options_)


def _requireSize(params, minimum):
    if params.getSize() < minimum:
        raise InvalidModelParamsException('%s needs size >= %d, got %d'
                                          % (params.getModel(), minimum, params.getSize()))
    return params.getSize()


def _dipoles(params, N):
    dipoles = params.get('dipoles')
    if dipoles is None:
        return [1.0] * (N - 1)
    dipoles = [float(d) for d in dipoles]
    if len(dipoles) != N - 1:
        raise InvalidModelParamsException('%s with N = %d needs %d dipoles, got %d'
                                          % (params.getModel(), N, N - 1, len(dipoles)))
    return dipoles


def _spec(levels, dipoles, name):
    try:
        return SystemSpec(levels, dipoles, name)
    except InvalidSpecException as e:
        raise InvalidModelParamsException(str(e))


def _morse(params):
    N = _requireSize(params, 2)
    B = float(params.get('B', 0.1))
    if not 0 < B < 1.0 / N:
        raise InvalidModelParamsException('Morse parameter B must lie in (0, 1/N) = (0, %g), got %g' % (1.0 / N, B))
    spacings = [1.0 - B * n for n in range(1, N)]
    return SystemSpec.fromSpacings(spacings, params.get('groundEnergy', 0.0), _dipoles(params, N), 'morse')


def _box(params):
    N = _requireSize(params, 2)
    C = float(params.get('C', 1.0))
    if C <= 0:
        raise InvalidModelParamsException('Box constant C must be positive, got %g' % C)
    return _spec([C * n * n for n in range(1, N + 1)], _dipoles(params, N), 'box')


def _atom(params):
    N = _requireSize(params, 2)
    Z = float(params.get('Z', 1.0))
    if Z < 1:
        raise InvalidModelParamsException('Atomic number Z must be >= 1, got %g' % Z)
    return _spec([ATOM_ENERGY_CONSTANT * Z * Z / (n * n) for n in range(1, N + 1)], _dipoles(params, N), 'atom')


def _truncatedHarmonic(params):
    """
    E_n = (n - 1) + 1/2 and d_n = sqrt(n): level n holds quantum number n - 1.
    """
    N = _requireSize(params, 2)
    levels = [(n - 1) + 0.5 for n in range(1, N + 1)]
    dipoles = [math.sqrt(n) for n in range(1, N)]
    return _spec(levels, dipoles, 'truncated_harmonic')


def _coupledOscillators(params):
    """
    Two coupled l-level oscillators: spacing mu everywhere except mu_l = mu + delta.
    Variant d1 uses d_n = sqrt(n), d, sqrt(n - l); variant d2 uses 1, d, 1.
    """
    ell = _requireSize(params, 2)
    mu = float(params.get('mu', 1.0))
    delta = float(params.get('delta', 0.5))
    d = float(params.get('d', 1.0))
    variant = params.get('variant', 'd1')
    groundEnergy = float(params.get('groundEnergy', 0.0))
    if mu <= 0:
        raise InvalidModelParamsException('Spacing mu must be positive, got %g' % mu)
    if delta == 0 or mu + delta < 0:
        raise InvalidModelParamsException('delta must be nonzero with mu + delta >= 0, got %g' % delta)
    if d == 0:
        raise InvalidModelParamsException('The coupling dipole d must be nonzero')
    if variant not in ('d1', 'd2'):
        raise InvalidModelParamsException("variant must be 'd1' or 'd2', got %r" % (variant,))
    N = 2 * ell
    levels = [groundEnergy + (n - 1) * mu + (delta if n > ell else 0.0) for n in range(1, N + 1)]
    dipoles = []
    for n in range(1, N):
        if n == ell:
            dipoles.append(d)
        elif variant == 'd2':
            dipoles.append(1.0)
        elif n < ell:
            dipoles.append(math.sqrt(n))
        else:
            dipoles.append(math.sqrt(n - ell))
    return _spec(levels, dipoles, 'coupled_oscillators_%s' % variant)


def _degenerateUpper(params):
    N = _requireSize(params, 2)
    lower = float(params.get('lower', 0.0))
    upper = float(params.get('upper', 1.0))
    if not upper > lower:
        raise InvalidModelParamsException('degenerate_upper needs upper > lower, got %g <= %g' % (upper, lower))
    return _spec([lower] + [upper] * (N - 1), _dipoles(params, N), 'degenerate_upper')


def _freeSpacings(params, count, avoid):
    """
    Caller-given free spacings, or seeded Uniform(0.5, 2) draws (rounded to 0.01) avoiding given values.
    """
    free = params.get('freeSpacings')
    if free is not None:
        free = [float(mu) for mu in free]
        if len(free) != count:
            raise InvalidModelParamsException('%s needs %d free spacings, got %d'
                                              % (params.getModel(), count, len(free)))
        return free
    rng = np.random.default_rng(params.get('seed', 0))
    free = []
    while len(free) < count:
        candidate = round(float(rng.uniform(0.5, 2.0)), 2)
        if candidate not in avoid:
            free.append(candidate)
    return free


def _checkUnique(spacings, index, model):
    for n, mu in enumerate(spacings):
        if n != index and mu == spacings[index]:
            raise InvalidModelParamsException('%s: spacing mu_%d must differ from mu_%d = %g'
                                              % (model, index + 1, n + 1, mu))


def _alternatingOdd(params):
    """
    N = 2l + 1 levels with mu_{2k} = common and mu_1 unique; mirrored: mu_{2k-1} = common and mu_{2l} unique.
    """
    ell = _requireSize(params, 1)
    N = 2 * ell + 1
    common = float(params.get('commonSpacing', 1.0))
    unique = float(params.get('uniqueSpacing', 2.0))
    mirrored = bool(params.get('mirrored', False))
    free = _freeSpacings(params, ell - 1, (common, unique))
    spacings = []
    freeValues = iter(free)
    for n in range(1, N):
        if mirrored:
            if n == N - 1:
                spacings.append(unique)
            elif n % 2 == 1:
                spacings.append(common)
            else:
                spacings.append(next(freeValues))
        else:
            if n == 1:
                spacings.append(unique)
            elif n % 2 == 0:
                spacings.append(common)
            else:
                spacings.append(next(freeValues))
    if any(mu <= 0 for mu in spacings):
        raise InvalidModelParamsException('alternating_odd spacings must be positive, got %r' % spacings)
    _checkUnique(spacings, N - 2 if mirrored else 0, 'alternating_odd')
    return SystemSpec.fromSpacings(spacings, params.get('groundEnergy', 0.0), _dipoles(params, N),
                                   'alternating_odd_mirrored' if mirrored else 'alternating_odd')


def _coupledTwoLevel(params):
    """
    N = 2l levels of l coupled two-level systems: odd spacings equal, mu_2 unique.
    """
    ell = _requireSize(params, 2)
    N = 2 * ell
    common = float(params.get('commonSpacing', 1.0))
    unique = float(params.get('uniqueSpacing', 2.0))
    free = iter(_freeSpacings(params, ell - 2, (common, unique)))
    spacings = []
    for n in range(1, N):
        if n % 2 == 1:
            spacings.append(common)
        elif n == 2:
            spacings.append(unique)
        else:
            spacings.append(next(free))
    if any(mu <= 0 for mu in spacings):
        raise InvalidModelParamsException('coupled_two_level spacings must be positive, got %r' % spacings)
    _checkUnique(spacings, 1, 'coupled_two_level')
    return SystemSpec.fromSpacings(spacings, params.get('groundEnergy', 0.0), _dipoles(params, N),
                                   'coupled_two_level')


_BUILDERS = {
    'morse': _morse,
    'box': _box,
    'atom': _atom,
    'truncated_harmonic': _truncatedHarmonic,
    'coupled_oscillators': _coupledOscillators,
    'degenerate_upper': _degenerateUpper,
    'alternating_odd': _alternatingOdd,
    'coupled_two_level': _coupledTwoLevel,
}

MODEL_NAMES = tuple(_BUILDERS)


##
# @param params ModelParams.
# @return The SystemSpec of the model.
def makeModel(params):
    return _BUILDERS[params.getModel()](params)


class Theorem4Formula:
    """
    Dipole formulas for equally spaced systems with all v_n equal.
    """
    #d_n^2 = d_1^2 n (N - n) / (N - 1), v = 2 d_1^2 / (N - 1); d_0 = d_N = 0 hold
    BOUNDARY_CONSISTENT = 'boundary_consistent'
    #d_n^2 = n d_1^2 - n (n - 1) v / 2 with v = 2 d_1^2 / (N - 4) for N > 4
    CLOSED_FORM = 'closed_form'


##
# @param N Number of levels.
# @param d1 First dipole.
# @return The common v of the boundary-consistent all-v-equal family.
def theorem4FamilyV(N, d1):
    return 2.0 * d1 * d1 / (N - 1)


##
# @param N Number of levels, N >= 3.
# @param d1 Positive first dipole.
# @param formula Theorem4Formula constant.
# @return An equally spaced SystemSpec (levels 0..N-1) with all v_n equal, or None when the formula
#         forces some d_n^2 <= 0.
def theorem4Family(N, d1, formula=Theorem4Formula.BOUNDARY_CONSISTENT):
    if N < 3:
        raise InvalidModelParamsException('The all-v-equal family needs N >= 3, got %d' % N)
    if not d1 > 0:
        raise InvalidModelParamsException('d1 must be positive, got %r' % (d1,))
    d1 = float(d1)
    if formula == Theorem4Formula.BOUNDARY_CONSISTENT:
        squares = [d1 * d1 * n * (N - n) / (N - 1) for n in range(1, N)]
    elif formula == Theorem4Formula.CLOSED_FORM:
        if N == 3:
            squares = [d1 * d1, d1 * d1]
        elif N == 4:
            squares = [d1 * d1, 4.0 * d1 * d1 / 3.0, d1 * d1]
        else:
            v = 2.0 * d1 * d1 / (N - 4)
            squares = [n * d1 * d1 - n * (n - 1) * v / 2.0 for n in range(1, N)]
    else:
        raise InvalidModelParamsException('Unknown formula %r' % (formula,))
    if any(square <= 0 for square in squares):
        return None
    dipoles = [d1] + [math.sqrt(square) for square in squares[1:]]
    return SystemSpec([float(n) for n in range(N)], dipoles, 'theorem4_family_N%d' % N)
