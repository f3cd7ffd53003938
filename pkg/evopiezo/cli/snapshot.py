"""
Module containing the binary snapshot format of a field.

A snapshot is the header line

    EVOPIEZO1 <name> <n1> <n2> <n3> <comps>

followed by a newline and n1*n2*n3*comps little-endian 64-bit floats,
component-major within a cell and cells in row-major order.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import io
import os

import numpy as np

from ..mytypes import doublenp
from ..mytypes import snapshotnp
from ..errors import SnapshotFormatError
from ..errors import InvalidArgumentError
from ..fields import make_field
from ..fields import make_grid

MAGIC = 'EVOPIEZO1'
# Longest accepted header line in bytes
MAX_HEADER = 1024


def snapshot_header(field):
    """Header line of a field, without the newline."""
    n1, n2, n3 = field.grid.n
    name = field.name or 'field'
    if any(c.isspace() for c in name):
        raise InvalidArgumentError('Snapshot names cannot contain whitespace, got {!r}.'.format(name))
    return '{} {} {} {} {} {}'.format(MAGIC, name, n1, n2, n3, field.ncomp)


def write_snapshot(field, path):
    """
    Write a field to path.

    Parameters
    ----------
    field : Field
        Field with a name.
    path : str
        Target file, overwritten.
    """
    header = (snapshot_header(field) + '\n').encode('ascii')
    payload = np.ascontiguousarray(field.values, dtype=snapshotnp).tobytes()
    with io.open(path, 'wb') as f:
        f.write(header)
        f.write(payload)


def _parse_header(line):
    parts = line.split(' ')
    if len(parts) != 6 or parts[0] != MAGIC:
        raise SnapshotFormatError('Malformed snapshot header {!r}.'.format(line))
    try:
        n = tuple(int(x) for x in parts[2:5])
        ncomp = int(parts[5])
    except ValueError:
        raise SnapshotFormatError('Malformed snapshot header {!r}.'.format(line))
    if min(n) < 1 or ncomp < 1:
        raise SnapshotFormatError('Snapshot header has non-positive sizes: {!r}.'.format(line))
    return parts[1], n, ncomp


def read_snapshot(path, length=None):
    """
    Read a field written by write_snapshot.

    Parameters
    ----------
    path : str
        Snapshot file.
    length : tuple of float or None
        Box extents of the grid; the header only stores cell counts, so
        unit cells are assumed if None.

    Returns
    -------
    Field
        Field with the values and name of the header.

    Raises
    ------
    SnapshotFormatError
        Malformed header or payload of the wrong size, with expected and
        actual byte counts.
    """
    with io.open(path, 'rb') as f:
        raw = f.read()
    end = raw.find(b'\n', 0, MAX_HEADER)
    if end < 0:
        raise SnapshotFormatError('Snapshot {} has no header line.'.format(os.path.basename(path)))
    try:
        line = raw[:end].decode('ascii')
    except UnicodeDecodeError:
        raise SnapshotFormatError('Snapshot header is not ASCII.')
    name, n, ncomp = _parse_header(line)
    payload = raw[end+1:]
    expected = n[0]*n[1]*n[2]*ncomp*snapshotnp.itemsize
    if len(payload) != expected:
        raise SnapshotFormatError('Snapshot payload has {} bytes, expected {}.'.format(len(payload), expected),
                                  expected=expected, actual=len(payload))
    values = np.frombuffer(payload, dtype=snapshotnp).astype(doublenp)
    length = tuple(float(x) for x in n) if length is None else length
    return make_field(make_grid(n, length), ncomp, values, name=name)


def snapshot_path(out_dir, name, step):
    return os.path.join(out_dir, '{}_{:06d}.snap'.format(name, step))
