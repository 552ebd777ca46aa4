import math

import numpy as np
import pytest

from heatplate import (ActuatorBank, BoundaryPartition, Characterization,
                       Grid, PlateGeometry, SensorBank, uniform_partitions)


def bank_devices(length, count, m, M, nu):
    parts = uniform_partitions(length, count)
    chars = [Characterization(m, M, nu, p.midpoint) for p in parts]
    return parts, chars


@pytest.fixture
def nominal_bank(grid):
    return ActuatorBank.build(grid, *bank_devices(0.30, 5, 1.0, 0.0, 4.0))


@pytest.fixture
def realistic_bank(grid):
    return ActuatorBank.build(grid, *bank_devices(0.30, 5, 1.0, 30.0, 4.0))


@pytest.fixture
def sensor_bank(grid):
    return SensorBank.build(grid, *bank_devices(0.30, 5, 1.0, 10.0, 4.0))


class TestCharacterization:
    def test_indicator_inside_partition(self):
        ch = Characterization(m=1.0, M=0.0, nu=4.0, center=0.03)
        part = BoundaryPartition(0.0, 0.06)
        x = np.array([0.0, 0.01, 0.0599])
        assert (ch.value(part, x) == 1.0).all()

    def test_zero_outside_partition(self):
        ch = Characterization(m=1.0, M=30.0, nu=4.0, center=0.03)
        part = BoundaryPartition(0.0, 0.06)
        assert (ch.value(part, np.array([0.06, 0.07, 0.29])) == 0.0).all()

    def test_peak_at_center(self):
        ch = Characterization(m=1.0, M=30.0, nu=4.0, center=0.03)
        part = BoundaryPartition(0.0, 0.06)
        assert ch.value(part, 0.03) == 1.0

    def test_bump_value(self):
        # exp(-(30*0.0285)^4) evaluated directly
        ch = Characterization(m=1.0, M=30.0, nu=4.0, center=0.03)
        part = BoundaryPartition(0.0, 0.06)
        expected = math.exp(-(30.0 * 0.0285) ** 4)
        assert ch.value(part, 0.0015) == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(0.5860, abs=1e-3)

    def test_half_open_membership(self):
        part = BoundaryPartition(0.06, 0.12)
        assert part.contains(0.06)
        assert not part.contains(0.12)

    @pytest.mark.parametrize("kwargs", [
        dict(m=1.2, M=0.0, nu=4.0, center=0.0),
        dict(m=-0.1, M=0.0, nu=4.0, center=0.0),
        dict(m=1.0, M=-1.0, nu=4.0, center=0.0),
        dict(m=1.0, M=10.0, nu=-1.0, center=0.0),
        dict(m=1.0, M=0.0, nu=0.0, center=0.0),  # 0**0 ambiguity
    ])
    def test_rejects_bad_parameters(self, kwargs):
        with pytest.raises(ValueError):
            Characterization(**kwargs)


class TestUniformPartitions:
    def test_five_over_plate_length(self):
        parts = uniform_partitions(0.3, 5)
        los = [p.lo for p in parts]
        his = [p.hi for p in parts]
        assert los == pytest.approx([0.0, 0.06, 0.12, 0.18, 0.24], abs=1e-15)
        assert his == pytest.approx([0.06, 0.12, 0.18, 0.24, 0.30], abs=1e-15)
        assert [p.midpoint for p in parts] == pytest.approx(
            [0.03, 0.09, 0.15, 0.21, 0.27], abs=1e-15)

    def test_single_partition(self):
        (p,) = uniform_partitions(1.0, 1)
        assert (p.lo, p.hi) == (0.0, 1.0)
        assert p.midpoint == 0.5

    def test_equal_widths(self):
        parts = uniform_partitions(0.3, 3)
        assert [p.hi - p.lo for p in parts] == pytest.approx([0.1] * 3, rel=1e-12)

    def test_rejects_zero_count(self):
        with pytest.raises(ValueError):
            uniform_partitions(0.3, 0)


class TestActuatorBank:
    def test_nominal_weights_are_all_one(self, nominal_bank):
        assert nominal_bank.weight_table.shape == (5, 100)
        assert (nominal_bank.weight_table.sum(axis=0) == 1.0).all()
        assert set(np.unique(nominal_bank.weight_table)) == {0.0, 1.0}

    def test_indicator_rows_match_partition_membership(self, nominal_bank, grid):
        x = grid.x1_centers()
        for part, row in zip(nominal_bank.partitions, nominal_bank.weight_table):
            assert (row == part.contains(x).astype(float)).all()

    def test_realistic_weights_peak_at_center(self, realistic_bank, grid):
        x = grid.x1_centers()
        for n, (part, char) in enumerate(zip(realistic_bank.partitions,
                                             realistic_bank.characterizations)):
            row = realistic_bank.weight_table[n]
            inside = part.contains(x)
            assert (row[~inside] == 0.0).all()
            # weights fall monotonically from the center toward the edges
            dist = np.abs(x[inside] - char.center)
            order = np.argsort(dist)
            assert (np.diff(row[inside][order]) <= 1e-15).all()
            assert row.max() > 0.999

    def test_weights_within_unit_interval(self, realistic_bank, sensor_bank):
        for table in (realistic_bank.weight_table, sensor_bank.weight_table):
            assert (table >= 0.0).all() and (table <= 1.0).all()

    def test_one_cell_per_partition(self):
        g = Grid(PlateGeometry(0.30, 0.01), J=5, K=2)
        bank = ActuatorBank.build(g, *bank_devices(0.30, 5, 1.0, 0.0, 4.0))
        assert (bank.weight_table == np.eye(5)).all()

    def test_disjoint_support(self, realistic_bank):
        nonzero_per_cell = (realistic_bank.weight_table > 0).sum(axis=0)
        assert (nonzero_per_cell <= 1).all()

    def test_rejects_overlapping_partitions(self, grid):
        parts = [BoundaryPartition(0.0, 0.2), BoundaryPartition(0.1, 0.3)]
        chars = [Characterization(1.0, 0.0, 4.0, p.midpoint) for p in parts]
        with pytest.raises(ValueError, match="overlap"):
            ActuatorBank.build(grid, parts, chars)

    def test_rejects_gap(self, grid):
        parts = [BoundaryPartition(0.0, 0.1), BoundaryPartition(0.2, 0.3)]
        chars = [Characterization(1.0, 0.0, 4.0, p.midpoint) for p in parts]
        with pytest.raises(ValueError, match="gap"):
            ActuatorBank.build(grid, parts, chars)

    def test_rejects_partition_without_cell_center(self):
        g = Grid(PlateGeometry(0.30, 0.01), J=5, K=2)  # centers every 0.06
        parts = uniform_partitions(0.30, 10)           # width 0.03
        chars = [Characterization(1.0, 0.0, 4.0, p.midpoint) for p in parts]
        with pytest.raises(ValueError, match="no cell center"):
            ActuatorBank.build(g, parts, chars)


class TestInducedFlux:
    def test_zero_input(self, realistic_bank):
        assert (realistic_bank.induced_flux(np.zeros(5)) == 0.0).all()

    def test_nominal_equal_inputs_give_constant_flux(self, nominal_bank):
        p = 2.5e5
        assert (nominal_bank.induced_flux(np.full(5, p)) == p).all()

    def test_single_channel_extracts_column(self, realistic_bank):
        p = 1e6
        u = np.zeros(5)
        u[0] = p
        flux = realistic_bank.induced_flux(u)
        assert flux == pytest.approx(p * realistic_bank.weight_table[0], rel=1e-12)

    def test_rejects_length_mismatch(self, nominal_bank):
        with pytest.raises(ValueError, match="5"):
            nominal_bank.induced_flux(np.zeros(4))

    def test_linearity(self, realistic_bank):
        rng = np.random.default_rng(11)
        u = rng.uniform(0, 1e6, 5)
        v = rng.uniform(0, 1e6, 5)
        a, b = 0.7, -1.3
        combined = realistic_bank.induced_flux(a * u + b * v)
        split = a * realistic_bank.induced_flux(u) + b * realistic_bank.induced_flux(v)
        assert combined == pytest.approx(split, rel=1e-12, abs=1e-9)


class TestSensorBank:
    def test_reference_sensor_layout(self, sensor_bank):
        assert sensor_bank.count == 5
        assert ((sensor_bank.weight_table > 0).sum(axis=1) == 20).all()
        assert (sensor_bank.weight_table.max(axis=1) > 0.999).all()

    def test_indicator_mass_is_partition_width(self, grid):
        bank = SensorBank.build(grid, *bank_devices(0.30, 5, 1.0, 0.0, 4.0))
        assert bank.mass == pytest.approx(np.full(5, 0.06), rel=1e-12)

    def test_single_sensor_mass_is_plate_length(self, grid):
        bank = SensorBank.build(grid, *bank_devices(0.30, 1, 1.0, 0.0, 4.0))
        assert bank.mass == pytest.approx([0.30], rel=1e-12)

    def test_rejects_zero_mass(self, grid):
        parts = uniform_partitions(0.30, 5)
        chars = [Characterization(0.0, 10.0, 4.0, p.midpoint) for p in parts]
        with pytest.raises(ValueError, match="mass"):
            SensorBank.build(grid, parts, chars)


class TestMeasure:
    def test_uniform_field(self, sensor_bank, grid):
        field = np.full(grid.n_cells, 350.0)
        assert sensor_bank.measure(field, grid) == pytest.approx(
            np.full(5, 350.0), rel=1e-12)

    def test_indicator_sensors_average_partition(self, grid):
        bank = SensorBank.build(grid, *bank_devices(0.30, 5, 1.0, 0.0, 4.0))
        field = np.zeros(grid.n_cells)
        top = 300.0 + 100.0 * grid.x1_centers() / 0.30
        field[(grid.K - 1) * grid.J:] = top
        y = bank.measure(field, grid)
        expected = [top[20 * n:20 * (n + 1)].mean() for n in range(5)]
        assert y == pytest.approx(expected, rel=1e-12)

    def test_weighted_average_against_bruteforce(self, sensor_bank, grid):
        field = np.zeros(grid.n_cells)
        x = grid.x1_centers()
        top = 300.0 + 100.0 * x / 0.30
        field[(grid.K - 1) * grid.J:] = top
        y = sensor_bank.measure(field, grid)
        # brute-force quadrature, one python loop per sensor
        expected = []
        for part, char in zip(sensor_bank.partitions, sensor_bank.characterizations):
            num = den = 0.0
            for j in range(grid.J):
                if part.lo <= x[j] < part.hi:
                    g = char.m * math.exp(-abs(char.M * (x[j] - char.center)) ** char.nu)
                    num += g * top[j] * grid.dx1
                    den += g * grid.dx1
            expected.append(num / den)
        assert y == pytest.approx(expected, rel=1e-12)
        # symmetric weights over a linear field read the partition centers
        assert y == pytest.approx([310.0, 330.0, 350.0, 370.0, 390.0], rel=1e-9)

    def test_readings_bounded_by_topside_row(self, sensor_bank, grid):
        rng = np.random.default_rng(3)
        for _ in range(20):
            field = rng.uniform(250.0, 500.0, grid.n_cells)
            top = field[(grid.K - 1) * grid.J:]
            y = sensor_bank.measure(field, grid)
            assert (y >= top.min() - 1e-9).all()
            assert (y <= top.max() + 1e-9).all()

    def test_peak_magnitude_cancels(self, grid):
        # halving every weight scales numerator and mass alike; with the
        # 0.5 factor exact in binary the readings match bitwise
        full = SensorBank.build(grid, *bank_devices(0.30, 5, 1.0, 10.0, 4.0))
        half = SensorBank.build(grid, *bank_devices(0.30, 5, 0.5, 10.0, 4.0))
        rng = np.random.default_rng(5)
        field = rng.uniform(250.0, 500.0, grid.n_cells)
        assert (full.measure(field, grid) == half.measure(field, grid)).all()

    def test_rejects_wrong_field_size(self, sensor_bank, grid):
        with pytest.raises(ValueError, match="cells"):
            sensor_bank.measure(np.zeros(grid.n_cells - 1), grid)
