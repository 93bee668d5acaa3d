#include <doctest.h>

#include "gaplab/cf_real.hpp"
#include "gaplab/families.hpp"
#include "helpers.hpp"

using namespace gaplab;

TEST_CASE("convergent recurrence from explicit lists") {
  CFReal x = testing::from_list({2, 2});
  x.extend_to(2);
  CHECK(x.table().q(0) == 1);
  CHECK(x.table().q(1) == 2);
  CHECK(x.table().q(2) == 5);

  CFReal y = testing::from_list({3});
  CHECK(y.extend_to(1) == 1);
  CHECK(y.table().q(1) == 3);
  CHECK(y.exhausted() == false);  // nothing past index 1 requested yet
  CHECK(y.extend_to(5) == 1);     // exhausted: reports the reachable depth
  CHECK(y.exhausted());

  CFReal f = testing::from_list({1, 1, 1, 1, 1});
  f.extend_to(5);
  long fib[] = {1, 1, 2, 3, 5, 8};
  for (long k = 0; k <= 5; ++k) CHECK(f.table().q(k) == fib[k]);
}

TEST_CASE("partial quotients below 1 are rejected") {
  CHECK_THROWS_AS(testing::from_list({2, 0, 3}), std::invalid_argument);
}

TEST_CASE("determinant identity holds on both families") {
  PairConstruction b = bounded_family(4);
  PairConstruction u = unbounded_family(2);
  b.alpha.extend_to(6);
  b.beta.extend_to(6);
  u.alpha.extend_to(8);
  u.beta.extend_to(8);
  for (long k = 1; k <= 6; ++k) {
    CHECK(determinant_identity_holds(b.alpha.table(), k));
    CHECK(determinant_identity_holds(b.beta.table(), k));
    CHECK(determinant_identity_holds(u.alpha.table(), k));
    CHECK(determinant_identity_holds(u.beta.table(), k));
  }
}

TEST_CASE("theta forms satisfy q_k th_{k-1} + q_{k-1} th_k = (0,0,1)") {
  PairConstruction b = bounded_family(4);
  PairConstruction u = unbounded_family(2);
  auto check_real = [](CFReal& x, Role role, long upto) {
    for (long k = 1; k <= upto; ++k) {
      LinearForm id = x.table().q(k) * theta_form(x, k - 1, role) +
                      x.table().q(k - 1) * theta_form(x, k, role);
      CHECK(id == LinearForm::one());
    }
  };
  check_real(b.alpha, Role::alpha, 4);
  check_real(b.beta, Role::beta, 4);
  check_real(u.alpha, Role::alpha, 8);
  check_real(u.beta, Role::beta, 8);
}

TEST_CASE("theta rejects negative index") {
  CFReal x = testing::golden();
  CHECK_THROWS_AS(theta_form(x, -1, Role::alpha), std::invalid_argument);
}

TEST_CASE("theta picks the sign that makes ||q_k x|| positive") {
  PairConstruction b = bounded_family(2);
  // ||3 alpha|| = |3 alpha - 1| realized as 1 - 3 alpha
  LinearForm th1 = theta_form(b.alpha, 1, Role::alpha);
  CHECK(th1 == LinearForm(Int(-3), Int(0), Int(1)));
  CHECK(certified_sign(th1, b.alpha, b.beta) == SignResult::positive);
  for (long k = 0; k <= 4; ++k) {
    CHECK(certified_sign(theta_form(b.alpha, k, Role::alpha), b.alpha, b.beta) ==
          SignResult::positive);
    CHECK(certified_sign(theta_form(b.beta, k, Role::beta), b.alpha, b.beta) ==
          SignResult::positive);
  }
}

TEST_CASE("denominators increase strictly from index 1") {
  CFReal f = testing::from_list({1, 1, 1, 1, 1});
  f.extend_to(5);
  for (long k = 2; k <= 5; ++k) CHECK(f.table().q(k) > f.table().q(k - 1));
}

TEST_CASE("enclosures are nested with the 1/(q_k q_{k+1}) width bound") {
  CFReal x = testing::golden();
  CFReal::Enclosure prev = x.enclosure(1);
  for (long d = 1; d <= 10; ++d) {
    CFReal::Enclosure e = x.enclosure(d);
    CHECK(e.iv.width() <= Rat(Int(1), x.table().q(d) * x.table().q(d + 1)));
    CHECK(prev.iv.contains(e.iv));
    prev = e;
  }

  PairConstruction b = bounded_family(3);
  CFReal::Enclosure e2 = b.alpha.enclosure(2);
  CHECK(e2.iv.width() <= Rat(Int(1), Int(3) * Int(20413)));
}

TEST_CASE("enclosure of an exhausted stream degenerates to the exact value") {
  CFReal y = testing::from_list({3});
  CFReal::Enclosure e = y.enclosure(4);
  CHECK(e.exact);
  CHECK(e.iv.lo == Rat(1, 3));
  CHECK(e.iv.hi == Rat(1, 3));
  CHECK(y.exact_value() == Rat(1, 3));
}

TEST_CASE("certified_sign basics") {
  PairConstruction u = unbounded_family(2);
  CHECK(certified_sign(LinearForm(), u.alpha, u.beta) == SignResult::zero_by_symbol);
  CHECK(certified_sign(LinearForm(Int(1), Int(0), Int(0)), u.alpha, u.beta) ==
        SignResult::positive);
  CHECK(certified_sign(LinearForm(Int(0), Int(0), Int(-7)), u.alpha, u.beta) ==
        SignResult::negative);

  // ||q_5 a|| < ||q_4 a||: best approximations improve strictly
  LinearForm diff = theta_form(u.alpha, 5, Role::alpha) - theta_form(u.alpha, 4, Role::alpha);
  CHECK(certified_sign(diff, u.alpha, u.beta) == SignResult::negative);
}

TEST_CASE("certified_sign never decides a symbolically hidden zero") {
  // With rational inputs a form can vanish without being the zero triple;
  // the verdict must then be undecided rather than a fake sign.
  CFReal x = testing::from_list({3});  // exactly 1/3
  CFReal y = testing::from_list({2});  // exactly 1/2
  LinearForm f(Int(3), Int(0), Int(-1));
  CHECK(certified_sign(f, x, y, 16) == SignResult::undecided);
}

TEST_CASE("certified_sign agrees with deeper evaluation once decided") {
  PairConstruction b = bounded_family(3);
  LinearForm f = theta_form(b.alpha, 1, Role::alpha) - theta_form(b.beta, 1, Role::beta);
  SignResult shallow = certified_sign(f, b.alpha, b.beta, 4);
  SignResult deep = certified_sign(f, b.alpha, b.beta, 32);
  CHECK(shallow == deep);
  CHECK(shallow != SignResult::undecided);
}

TEST_CASE("certified_floor pins the integer part") {
  PairConstruction u = unbounded_family(1);
  // 5a + 3b with a ~ 0.4232, b ~ 0.2724: value ~ 2.93
  LinearForm f(Int(5), Int(3), Int(0));
  CHECK(certified_floor(f, u.alpha, u.beta) == 2);
}

TEST_CASE("fixed_point64 screens to within a couple of ulps") {
  CFReal x = testing::golden();
  Fixed64 fx = fixed_point64(x);
  CHECK(fx.err_ulps <= 2);
  // 1/phi = 0.6180...: top bit of the fixed-point expansion is set
  CHECK((fx.value >> 63) == 1);
}
