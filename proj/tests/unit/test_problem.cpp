#include <cmath>
#include <optional>

#include "doctest.h"
#include "helpers.hpp"
#include "mixsn/problem.hpp"

using namespace mixsn;
using testing::error_of;
using testing::filled;

TEST_CASE("make_problem sorts smoothness and detects nu") {
  const auto a = make_problem(2, std::vector<double>{2, 1}, filled(2, 1));
  CHECK(a.s == std::vector<double>{1, 2});
  CHECK(a.nu == 1);
  CHECK(a.order == std::vector<std::size_t>{1, 0});

  const auto b = make_problem(3, filled(3, 1), filled(3, kInf));
  CHECK(b.nu == 3);
  CHECK(b.constant_smoothness());
  CHECK_FALSE(b.integer_mode());
}

TEST_CASE("make_problem validates") {
  const auto p = make_problem(4, filled(4, 2), filled(4, 1));
  CHECK(p.dim() == 4);
  CHECK(p.integer_mode());
  CHECK_FALSE(make_problem(4, filled(4, 2), filled(4, 2)).integer_mode());

  CHECK(error_of([] { make_problem(2, filled(2, 1), filled(2, 2), Target::H1); }) ==
        Errc::EnergyNeedsSmoothness);
  CHECK(error_of([] { make_problem(2, std::vector<double>{1, 0}, filled(2, 1)); }) ==
        Errc::NonPositiveSmoothness);
  CHECK(error_of([] { make_problem(2, filled(2, 1), std::vector<double>{1, -1}); }) ==
        Errc::InvalidFineIndex);
  CHECK(error_of([] { make_problem(3, filled(2, 1), filled(3, 1)); }) == Errc::InvalidArgument);
  CHECK(error_of([] { make_problem(1, std::vector<double>{NAN}, filled(1, 1)); }) ==
        Errc::InvalidArgument);
}

TEST_CASE("energy problems use q = 2") {
  const auto p = make_problem(3, filled(3, 2), filled(3, 1), Target::H1);
  CHECK(p.q == filled(3, 2));
}

TEST_CASE("weight_u examples") {
  const std::vector<std::int64_t> k3{3};
  CHECK(weight_u(make_problem(filled(1, 1), filled(1, 1)), k3) == doctest::Approx(4));

  const std::vector<std::int64_t> k20{2, 0};
  CHECK(weight_u(make_problem(filled(2, 1), filled(2, kInf)), k20) == doctest::Approx(2));

  const std::vector<std::int64_t> k11{1, 1};
  CHECK(weight_u(make_problem(std::vector<double>{1, 2}, filled(2, 1)), k11) == doctest::Approx(8));
}

TEST_CASE("weight_u log form is accurate for huge arguments") {
  const auto p = make_problem(filled(1, 3), filled(1, 2));
  const std::vector<std::int64_t> k{1'000'000};
  const double expect = 1.5 * std::log1p(1e12);
  CHECK(log_weight_u(p, k) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("energy weight and majorant") {
  const auto p = make_problem(2, filled(2, 2), filled(2, 2), Target::H1);
  const std::vector<std::int64_t> k0{0, 0};
  const std::vector<std::int64_t> k10{1, 0};
  const std::vector<std::int64_t> k11{1, 1};
  CHECK(weight_energy(p, k0) == doctest::Approx(1));
  CHECK(weight_energy(p, k10) == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(weight_energy(p, k11) == doctest::Approx(std::sqrt(3.0) / 4));
  CHECK(weight_energy_majorant(p, k0) == doctest::Approx(1));
  CHECK(weight_energy_majorant(p, k10) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(weight_energy_majorant(p, k11) == doctest::Approx(0.5));

  for (std::int64_t a = 0; a < 20; ++a)
    for (std::int64_t b = 0; b < 20; ++b) {
      const std::vector<std::int64_t> k{a, b};
      CHECK(weight_energy(p, k) <= weight_energy_majorant(p, k) * (1 + 1e-15));
    }
}

TEST_CASE("WeightFunction exact reciprocals") {
  const auto w = WeightFunction::tensor(make_problem(filled(2, 3), filled(2, 1)));
  REQUIRE(w.exact());
  const std::vector<std::int64_t> k{2, 4};
  CHECK(w.exact_reciprocal(k) == std::optional<std::uint64_t>(27 * 125));
  CHECK(w.sigma(k) == doctest::Approx(1.0 / (27 * 125)));

  const std::vector<std::int64_t> huge{1'000'000, 1'000'000};
  CHECK_FALSE(w.exact_reciprocal(huge).has_value());

  const auto f = WeightFunction::tensor(make_problem(filled(2, 1.5), filled(2, 1)));
  CHECK_FALSE(f.exact());
}

TEST_CASE("to_user_order undoes the canonical sort") {
  const auto p = make_problem(3, std::vector<double>{3, 1, 2}, filled(3, 1));
  const std::vector<std::int64_t> canonical{10, 20, 30};
  CHECK(to_user_order(p, canonical) == std::vector<std::int64_t>{30, 10, 20});
}

TEST_CASE("sign multiplicity") {
  CHECK(sign_multiplicity(std::vector<std::int64_t>{0, 0}) == 1);
  CHECK(sign_multiplicity(std::vector<std::int64_t>{3, 0, 1}) == 4);
}
