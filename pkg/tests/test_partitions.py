import pytest

from dtfour.partitions import (
    PlanePartition,
    SolidPartition,
    box_set,
    divisor_support,
    enumerate_plane,
    enumerate_solid,
    lift_plane,
    plane_oracle,
    solid_oracle,
)

SOLID = [1, 1, 4, 10, 26, 59, 140, 307, 684]
PLANE = [1, 1, 3, 6, 13, 24, 48, 86, 160]


@pytest.mark.parametrize("n", range(9))
def test_counts(n):
    assert sum(1 for _ in enumerate_solid(n)) == SOLID[n]
    assert sum(1 for _ in enumerate_plane(n)) == PLANE[n]


@pytest.mark.parametrize("n", range(7))
def test_against_oracle(n):
    solid = [box_set(p) for p in enumerate_solid(n)]
    assert len(set(solid)) == len(solid)
    assert set(solid) == solid_oracle(n)
    plane = [box_set(p) for p in enumerate_plane(n)]
    assert set(plane) == plane_oracle(n) and len(set(plane)) == len(plane)


def test_valid_and_sized():
    for n in range(7):
        for p in enumerate_solid(n):
            assert p.is_valid() and p.size == n == len(p.boxes())


def test_canonical_order_is_stable():
    a = list(enumerate_solid(4))
    assert a == list(enumerate_solid(4))
    keys = [p.flat_key(4) for p in a]
    assert keys == sorted(keys)


def test_nested_roundtrip():
    for p in enumerate_solid(5):
        assert SolidPartition.from_nested(p.nested()) == p
    lam = PlanePartition.from_nested([[2, 1], [1]])
    assert lam.size == 4 and lam.height(1, 1) == 2 and lam.height(2, 2) == 0


def test_invalid_height_map():
    assert not SolidPartition.from_dict({(1, 1, 1): 1, (1, 1, 2): 2}).is_valid()
    assert not PlanePartition.from_dict({(2, 1): 1}).is_valid()


def test_divisor_support():
    for n in range(6):
        supported = [p for p in enumerate_solid(n) if divisor_support(p) is not None]
        # height-one solid partitions are plane partitions stacked along k
        assert len(supported) == sum(1 for _ in enumerate_plane(n))
        for p in supported:
            assert lift_plane(divisor_support(p)) == p
    tall = SolidPartition.from_dict({(1, 1, 1): 2})
    assert divisor_support(tall) is None


def test_size_limits():
    with pytest.raises(ValueError):
        list(enumerate_solid(9))
    with pytest.raises(ValueError):
        list(enumerate_plane(-1))
