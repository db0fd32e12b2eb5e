import copy
import json
import os
import time
from fractions import Fraction
from typing import Any, Mapping

import numpy as np


def json_save(obj, path):
    """ Save a JSON report to a file. The data is written to a separate file first, then renamed to take the place of the old file, so a reader never sees a partially written report. """
    with open(path + '.tmp', 'w') as f:
        json.dump(to_jsonable(obj), f, indent=2)
    os.rename(path + '.tmp', path)


def to_jsonable(x: Any):
    """
    Convert exact and numpy values into plain JSON types. Rationals become "p/q" strings, complex numbers [re, im] pairs.

    >>> to_jsonable({'a': Fraction(1, 2), 'b': (1, Fraction(4, 2)), 'c': 1j})
    {'a': '1/2', 'b': [1, 2], 'c': [0.0, 1.0]}
    """
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f'{x.numerator}/{x.denominator}'
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if hasattr(x, 'to_dict'):
        return to_jsonable(x.to_dict())
    if isinstance(x, Mapping):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(x)]
    if isinstance(x, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in x]
    return str(x)


##################################################
# File IO
##################################################


def generate_id() -> str:
    """ Identifier for a report file, based on the current date and time. """
    return time.strftime("%Y_%m_%d-%H_%M_%S")


def create_unique_file(directory, name, extension):
    """ Reserve a path for a report file in `directory`, appending -1, -2, ... to `name` while the path is taken. Returns the path. """
    directory = str(directory)
    if not os.path.exists(directory):
        os.makedirs(directory)
    if extension.startswith('.'):
        extension = extension[1:]
    filename = os.path.join(directory, f'{name}.{extension}')
    index = 0
    while True:
        try:
            # O_CREAT | O_EXCL makes the existence check and the creation atomic on POSIX
            f = os.open(filename, os.O_CREAT | os.O_EXCL)
            os.close(f)
        except FileExistsError:
            index += 1
            filename = os.path.join(directory, f'{name}-{index}.{extension}')
            continue
        return filename


##################################################
# Preset Configs
##################################################


def merge(source, destination):
    """
    Recursively merge the preset `source` into a copy of the preset `destination`. Lists of equal length are merged entry by entry, so facet offsets can be changed without restating the normals.

    >>> square = {'polytope': {'dim': 2, 'facets': [{'normal': [1, 0], 'offset': 1}, {'normal': [0, 1], 'offset': 1}]}}
    >>> moved = {'polytope': {'facets': [{'offset': 2}, {}]}}
    >>> merge(moved, square)['polytope']['facets']
    [{'normal': [1, 0], 'offset': 2}, {'normal': [0, 1], 'offset': 1}]
    """
    destination = copy.deepcopy(destination)
    if not isinstance(source, type(destination)):
        return source
    if isinstance(source, Mapping):
        for key, value in source.items():
            if isinstance(value, dict):
                node = destination.setdefault(key, {})
                destination[key] = merge(value, node)
            elif isinstance(value, list):
                if key in destination and isinstance(destination[key],list) and len(destination[key]) == len(value):
                    destination[key] = [merge(s,d) for s,d in zip(source[key],destination[key])]
                else:
                    destination[key] = value
            elif isinstance(value, ConfigReplace):
                destination[key] = value.value
            elif isinstance(value, ConfigDelete):
                del destination[key]
            else:
                destination[key] = value

        return destination
    else:
        return source


class PresetConfigs(dict):
    """ A dictionary of named input presets (geometries and discs). A preset can be written as a change to the previously added one, which keeps families of related inputs short and makes their differences visible.

    By default, dicts and lists of dicts (if both are the same length) are merged recursively. All other types are completely replaced with the new value. Wrap a value in `ConfigReplace` to replace a dict or list outright, or use `ConfigDelete` to drop a key.
    """
    def __init__(self):
        self._last_key = None
    def add(self, key, config, inherit=None):
        if key in self:
            raise KeyError(f'Preset {key} already exists.')
        if inherit is None:
            self[key] = config
        else:
            self[key] = merge(config,self[inherit])
        self._last_key = key
    def add_change(self, key, config):
        self.add(key, config, inherit=self._last_key)


class ConfigReplace:
    """ Replaces a dict or list of the inherited preset instead of merging into it, e.g. the rays of a fan with a different number of rays. """
    def __init__(self, value):
        self.value = value


class ConfigDelete:
    """ Drops the key from the inherited preset. """
