import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from odoshift import errors
from odoshift import odometer as od

PRIMES = (2, 3, 5, 7, 11, 13)

cf_sets = st.dictionaries(
    keys=st.sampled_from(PRIMES),
    values=st.one_of(st.integers(min_value=1, max_value=6), st.just(od.INFINITY)),
    max_size=4,
).map(od.CFSet)


class TestCFSet:
    def test_rejects_composite_keys(self):
        with pytest.raises(errors.InvalidInputError):
            od.CFSet({4: 1})

    def test_zero_exponents_normalized_away(self):
        assert od.CFSet({2: 0, 3: 1}).exponents == {3: 1}

    def test_contains_examples(self):
        assert od.cf_contains(od.CFSet({2: od.INFINITY}), 8)
        assert not od.cf_contains(od.CFSet({2: od.INFINITY}), 6)

    @given(cf=cf_sets)
    def test_one_is_always_a_member(self, cf):
        assert od.cf_contains(cf, 1)

    @given(cf=cf_sets, n=st.integers(min_value=1, max_value=5000))
    def test_divisor_closed(self, cf, n):
        if od.cf_contains(cf, n):
            assert all(od.cf_contains(cf, d) for d in range(1, n + 1) if n % d == 0)

    @given(cf=cf_sets, x=st.integers(min_value=1, max_value=400), y=st.integers(min_value=1, max_value=400))
    def test_lcm_closed(self, cf, x, y):
        if od.cf_contains(cf, x) and od.cf_contains(cf, y):
            assert od.cf_contains(cf, x * y // math.gcd(x, y))

    def test_subset_examples(self):
        assert od.cf_subset(od.CFSet({2: od.INFINITY}), od.CFSet({2: od.INFINITY, 3: 1}))
        assert not od.cf_subset(od.CFSet({2: od.INFINITY}), od.CFSet({2: 5}))

    @given(a=cf_sets, b=cf_sets)
    def test_factor_antisymmetry(self, a, b):
        if od.cf_subset(a, b) and od.cf_subset(b, a):
            assert od.cf_equal(a, b)

    def test_text_round_trip(self):
        for cf in (od.CFSet({}), od.CFSet({2: od.INFINITY, 3: 2}), od.CFSet({7: 1})):
            assert od.cf_equal(od.parse_cf(od.cf_to_text(cf)), cf)
        assert od.cf_to_text(od.CFSet({2: od.INFINITY, 3: 2})) == "2^inf*3^2"
        assert od.cf_to_text(od.CFSet({})) == "1"

    @given(cf=cf_sets)
    def test_text_round_trip_random(self, cf):
        assert od.cf_equal(od.parse_cf(od.cf_to_text(cf)), cf)


class TestCFClosure:
    def test_power_family(self):
        assert od.cf_closure([od.PowerFamily(2)]).exponents == {2: od.INFINITY}

    def test_finite_generators(self):
        assert od.cf_closure([6, 10]).exponents == {2: 1, 3: 1, 5: 1}

    def test_trivial_generator(self):
        assert od.cf_closure([1]).exponents == {}

    def test_rejects_garbage(self):
        with pytest.raises(errors.InvalidInputError):
            od.cf_closure(["2^k"])
        with pytest.raises(errors.InvalidInputError):
            od.cf_closure([])

    @given(gens=st.lists(st.integers(min_value=1, max_value=500), min_size=1, max_size=5))
    def test_closure_contains_generators_and_lcms(self, gens):
        cf = od.cf_closure(gens)
        assert all(od.cf_contains(cf, g) for g in gens)
        assert od.cf_contains(cf, math.lcm(*gens))


class TestOdometerSpec:
    def test_ones_normalized_away(self):
        assert od.OdometerSpec(bases=(1, 6, 1), repeat=(1,)).bases == (6,)

    def test_rejects_small_factors(self):
        with pytest.raises(errors.InvalidInputError):
            od.OdometerSpec(bases=(0,))

    def test_radix_cycle(self):
        spec = od.OdometerSpec(bases=(5,), repeat=(2, 3))
        assert [spec.radix_at(i) for i in range(6)] == [5, 2, 3, 2, 3, 2]

    def test_text_round_trip(self):
        for spec in (od.BINARY_ODOMETER, od.OdometerSpec(bases=(12,)), od.OdometerSpec(bases=(2, 3), repeat=(5,))):
            assert od.parse_spec(od.spec_to_text(spec)) == spec
        assert od.spec_to_text(od.BINARY_ODOMETER) == "2,..."
        assert od.parse_spec("2,3,...") == od.OdometerSpec(bases=(2,), repeat=(3,))


class TestOdometerStep:
    def test_examples(self):
        spec = od.OdometerSpec(bases=(2, 3))
        assert od.odometer_step(od.OdometerState((0, 0)), spec).state.digits == (1, 0)
        assert od.odometer_step(od.OdometerState((1, 0)), spec).state.digits == (0, 1)
        full = od.odometer_step(od.OdometerState((1, 2)), spec)
        assert full.state.digits == (0, 0)
        assert full.carry_out

    def test_mismatched_lengths(self):
        with pytest.raises(errors.InvalidInputError):
            od.odometer_step(od.OdometerState((0,)), od.OdometerSpec(bases=(2, 3)))

    def test_digit_bounds(self):
        with pytest.raises(errors.InvalidInputError):
            od.odometer_step(od.OdometerState((2, 0)), od.OdometerSpec(bases=(2, 3)))

    @given(start=st.integers(min_value=0, max_value=255), steps=st.integers(min_value=0, max_value=300))
    def test_binary_step_is_integer_increment(self, start, steps):
        K = 8
        state = od.OdometerState(tuple((start >> i) & 1 for i in range(K)))
        for _ in range(steps):
            state = od.odometer_step(state, od.BINARY_ODOMETER).state
        value = sum(b << i for i, b in enumerate(state.digits))
        assert value == (start + steps) % (1 << K)

    def test_orbit_minimality(self):
        # any start state cycles through all states of the truncation
        spec = od.OdometerSpec(bases=(2, 3, 2))
        seen = {
            s.digits
            for s in od.odometer_orbit(spec, od.OdometerState((1, 2, 0)), 11)
        }
        assert len(seen) == 12


class TestCFOfOdometer:
    def test_binary(self):
        assert od.cf_of_odometer(od.BINARY_ODOMETER).exponents == {2: od.INFINITY}

    def test_finite_six(self):
        assert od.cf_of_odometer(od.OdometerSpec(bases=(6,))).exponents == {2: 1, 3: 1}

    def test_alternating(self):
        cf = od.cf_of_odometer(od.OdometerSpec(repeat=(2, 3)))
        assert cf.exponents == {2: od.INFINITY, 3: od.INFINITY}

    def test_alternating_matches_divisibility_scan(self):
        # n is a member iff n divides some partial product 2, 6, 12, 36, ...
        spec = od.OdometerSpec(repeat=(2, 3))
        cf = od.cf_of_odometer(spec)
        products = [1]
        for i in range(40):
            products.append(products[-1] * spec.radix_at(i))
        for n in range(1, 10_001):
            divides_some = any(prod % n == 0 for prod in products)
            assert od.cf_contains(cf, n) == divides_some


class TestOdometerFromCF:
    def test_pure_binary(self):
        assert od.odometer_from_cf(od.CFSet({2: od.INFINITY})) == od.BINARY_ODOMETER

    def test_finite_case(self):
        assert od.odometer_from_cf(od.CFSet({2: 2, 3: 1})) == od.OdometerSpec(bases=(12,))

    @given(cf=cf_sets)
    def test_round_trip(self, cf):
        assert od.cf_equal(od.cf_of_odometer(od.odometer_from_cf(cf)), cf)


class TestDyadicInt:
    def test_add_one_examples(self):
        assert od.dyadic_add_one(od.DyadicInt((0, 0, 0))).bits == (1, 0, 0)
        assert od.dyadic_add_one(od.DyadicInt((1, 1, 1))).bits == (0, 0, 0)
        assert od.dyadic_add_one(od.DyadicInt((1, 1, 0))).bits == (0, 0, 1)

    def test_text_is_lsb_first(self):
        assert od.DyadicInt.from_int(5, 8).to_text() == "10100000"

    @given(value=st.integers(min_value=0, max_value=10_000), precision=st.integers(min_value=1, max_value=16))
    def test_from_int_round_trip(self, value, precision):
        x = od.DyadicInt.from_int(value, precision)
        assert x.value == value % (1 << precision)
        assert od.dyadic_add_one(x).value == (value + 1) % (1 << precision)

    def test_rejects_non_bits(self):
        with pytest.raises(errors.InvalidInputError):
            od.DyadicInt((0, 2))
