import pytest

from toric_real.utils import PresetConfigs, ConfigReplace, ConfigDelete, merge


def test_add():
    config = PresetConfigs()
    config.add('square', {'dim': 2})
    config.add('cube', {'dim': 3})

    assert 'square' in config.keys()
    assert 'cube' in config.keys()

    assert config['square'] == {'dim': 2}
    assert config['cube'] == {'dim': 3}


def test_add_change():
    config = PresetConfigs()
    config.add('square', {'dim': 2})
    config.add_change('named-square', {'unit_name': '[X]'})

    assert config['square'] == {'dim': 2}
    assert config['named-square'] == {'dim': 2, 'unit_name': '[X]'}


def test_repeat_preset_name_errors():
    config = PresetConfigs()
    config.add('square', {'dim': 2})

    with pytest.raises(KeyError):
        config.add('square', {'dim': 3})


def test_add_change_nested_dict_replace_one_entry():
    config = PresetConfigs()
    config.add('a', {'fan': {'dim': 2, 'rays': [[1, 0]]}, 'unit_name': '[X]'})
    config.add_change('b', {'fan': {'dim': 3}})

    assert config['a'] == {'fan': {'dim': 2, 'rays': [[1, 0]]}, 'unit_name': '[X]'}
    assert config['b'] == {'fan': {'dim': 3, 'rays': [[1, 0]]}, 'unit_name': '[X]'}


def test_add_change_lists_of_ints_are_replaced():
    """ Rays are lists of ints and are replaced, not merged """
    config = PresetConfigs()
    config.add('a', {'rays': [[1, 0], [0, 1]]})
    config.add_change('b', {'rays': [[1, 0], [-1, -1]]})

    assert config['a'] == {'rays': [[1, 0], [0, 1]]}
    assert config['b'] == {'rays': [[1, 0], [-1, -1]]}


def test_add_change_merge_list_of_dicts():
    """ Facet lists are merged entry by entry, so a change can give only the new normals and keep the offsets. """
    config = PresetConfigs()
    config.add('a', {'facets': [{'normal': [1, 0], 'offset': 1}, {'normal': [0, 1], 'offset': 1}]})
    config.add_change('b', {'facets': [{'normal': [1, 1]}, {}]})

    assert config['b'] == {'facets': [{'normal': [1, 1], 'offset': 1}, {'normal': [0, 1], 'offset': 1}]}


def test_add_change_replace_list_of_dicts_of_different_length():
    config = PresetConfigs()
    config.add('a', {'components': [{'a': 1}, {'a': 2}, {'zero': True}]})
    config.add_change('b', {'components': [{'a': 3}, {'a': 4}]})

    assert config['b'] == {'components': [{'a': 3}, {'a': 4}]}


def test_add_change_replace_dict():
    config = PresetConfigs()
    config.add('a', {'fan': {'dim': 2, 'rays': [[1, 0]]}, 'unit_name': '[X]'})
    config.add_change('b', {'fan': ConfigReplace({'dim': 1})})

    assert config['b'] == {'fan': {'dim': 1}, 'unit_name': '[X]'}


def test_add_change_delete_key():
    config = PresetConfigs()
    config.add('a', {'fan': {'dim': 2, 'rays': [[1, 0]]}, 'unit_name': '[X]'})
    config.add_change('b', {'fan': {'rays': ConfigDelete()}})
    config.add_change('c', {'fan': ConfigDelete(), 'unit_name': ConfigDelete()})

    assert config['b'] == {'fan': {'dim': 2}, 'unit_name': '[X]'}
    assert config['c'] == {}


def test_add_inherit_from_named_preset():
    config = PresetConfigs()
    config.add('a', {'dim': 2, 'unit_name': '[X]'})
    config.add('b', {'dim': 3})
    config.add('c', {'unit_name': '[Y]'}, inherit='a')

    assert config['c'] == {'dim': 2, 'unit_name': '[Y]'}


def test_merge_does_not_modify_destination():
    destination = {'fan': {'dim': 2}}
    merge({'fan': {'dim': 3}}, destination)

    assert destination == {'fan': {'dim': 2}}


def test_merge_changes_offsets_only():
    square = {'polytope': {'dim': 2, 'facets': [{'normal': [1, 0], 'offset': 1}, {'normal': [0, 1], 'offset': 1}]}}
    moved = merge({'polytope': {'facets': [{'offset': 2}, {}]}}, square)

    assert moved['polytope']['dim'] == 2
    assert moved['polytope']['facets'] == [{'normal': [1, 0], 'offset': 2}, {'normal': [0, 1], 'offset': 1}]
