"""Module containing kernel functions and the spatial and time profiles of sources."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np
from scipy.spatial.distance import cdist

from ..mytypes import doublenp
from ..errors import InvalidArgumentError


def gaussian_kernel(dist2, width, amplitude=1.0):
    """
    Gaussian convolution kernel.

    Parameters
    ----------
    dist2 : array
        Squared distances |x-y|^2.
    width : float
        Standard deviation of the kernel.
    amplitude : float
        Value of the kernel at zero distance.

    Returns
    -------
    array
        amplitude*exp(-dist2/(2*width^2)).
    """
    return amplitude*np.exp(-dist2/(2*width**2))


def squared_distances(points, others=None):
    """Pairwise squared distances, exactly symmetric for others=None."""
    others = points if others is None else others
    return cdist(points, others, 'sqeuclidean')


def gaussian_bump(points, center, width, amplitude):
    """
    Gaussian bump sampled at given points.

    Parameters
    ----------
    points : array
        npts by 3 array of positions.
    center : array
        Center of the bump.
    width : float
        Standard deviation of the bump.
    amplitude : array
        Amplitude per component.

    Returns
    -------
    array
        npts by ncomp array.
    """
    center = np.asarray(center, dtype=doublenp).reshape(1, 3)
    amplitude = np.atleast_1d(np.asarray(amplitude, dtype=doublenp))
    shape = gaussian_kernel(squared_distances(points, center)[:, 0], width)
    return shape[:, None]*amplitude[None, :]


def constant_profile(t, value=1.0):
    return value


def sine_profile(t, freq, amplitude=1.0, phase=0.0):
    return amplitude*np.sin(2*np.pi*freq*t + phase)


def ramp_profile(t, duration=1.0):
    if t <= 0:
        return 0.0
    return min(t/duration, 1.0)


def step_profile(t, t0=0.0):
    return 1.0 if t >= t0 else 0.0


TIME_PROFILES = {
    'constant': (constant_profile, {'value': 1.0}),
    'sine': (sine_profile, {'freq': None, 'amplitude': 1.0, 'phase': 0.0}),
    'ramp': (ramp_profile, {'duration': 1.0}),
    'step': (step_profile, {'t0': 0.0}),
    }

SPATIAL_PROFILES = {
    'constant': {'value': None},
    'gaussian_bump': {'center': None, 'width': None, 'amplitude': None},
    }


def _fill_params(kind, params, defaults, what):
    params = dict(params)
    unknown = set(params) - set(defaults)
    if unknown:
        raise InvalidArgumentError('Unknown parameters {} for {} profile {!r}.'.format(sorted(unknown), what, kind))
    out = {}
    for key, default in defaults.items():
        if key in params:
            out[key] = params[key]
        elif default is None:
            raise InvalidArgumentError('Parameter {!r} is required for {} profile {!r}.'.format(key, what, kind))
        else:
            out[key] = default
    return out


class TimeProfile(object):
    """
    Scalar function of time multiplying a spatial source profile.

    Parameters
    ----------
    kind : str
        One of 'constant', 'sine', 'ramp', 'step'.
    params : dict
        Parameters of the profile function.
    """

    def __init__(self, kind='constant', **params):
        if kind not in TIME_PROFILES:
            raise InvalidArgumentError('Unknown time profile {!r}, allowed are {}.'.format(kind, sorted(TIME_PROFILES)))
        func, defaults = TIME_PROFILES[kind]
        self.kind = kind
        self.params = _fill_params(kind, params, defaults, 'time')
        if kind == 'ramp' and not self.params['duration'] > 0:
            raise InvalidArgumentError('Ramp duration has to be positive.')
        self._func = func

    def __call__(self, t):
        val = float(self._func(t, **self.params))
        if not np.isfinite(val):
            raise InvalidArgumentError('Time profile {!r} is not finite at t={}.'.format(self.kind, t))
        return val

    def __repr__(self):
        return 'TimeProfile({!r}, {})'.format(self.kind, self.params)


class SpatialProfile(object):
    """
    Spatial shape of a source channel or an initial field.

    Parameters
    ----------
    kind : str
        'constant' (value) or 'gaussian_bump' (center, width, amplitude).
    params : dict
        Parameters of the profile.
    """

    def __init__(self, kind='constant', **params):
        if kind not in SPATIAL_PROFILES:
            raise InvalidArgumentError('Unknown spatial profile {!r}, allowed are {}.'.format(
                kind, sorted(SPATIAL_PROFILES)))
        self.kind = kind
        self.params = _fill_params(kind, params, SPATIAL_PROFILES[kind], 'spatial')
        if kind == 'gaussian_bump':
            if not self.params['width'] > 0:
                raise InvalidArgumentError('Gaussian bump width has to be positive.')
            if np.asarray(self.params['center']).shape != (3,):
                raise InvalidArgumentError('Gaussian bump center needs three coordinates.')

    def _amplitude(self, key, ncomp):
        amp = np.atleast_1d(np.asarray(self.params[key], dtype=doublenp)).ravel()
        if amp.size == 1:
            return np.full(ncomp, amp[0], dtype=doublenp)
        if amp.size != ncomp:
            raise InvalidArgumentError('Profile {!r} needs 1 or {} values, got {}.'.format(self.kind, ncomp, amp.size))
        return amp

    def evaluate(self, grid, ncomp):
        """Returns the flat array of ncomp*nc values of the profile on grid."""
        if self.kind == 'constant':
            amp = self._amplitude('value', ncomp)
            return np.tile(amp, grid.nc)
        amp = self._amplitude('amplitude', ncomp)
        return gaussian_bump(grid.centers(), self.params['center'], self.params['width'], amp).ravel()

    def __repr__(self):
        return 'SpatialProfile({!r}, {})'.format(self.kind, self.params)
