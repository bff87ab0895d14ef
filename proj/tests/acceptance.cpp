#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "forcelab/collapse.hpp"
#include "forcelab/error.hpp"
#include "forcelab/friedman.hpp"
#include "forcelab/generators.hpp"
#include "forcelab/iteration.hpp"
#include "forcelab/suites.hpp"

using namespace forcelab;

namespace {

constexpr std::size_t kSuiteSize = 200;
constexpr std::uint64_t kSuiteSeed = 2024;
constexpr std::size_t kNamesPerLevel = 64;

const std::vector<Preorder>& suite() {
  static const std::vector<Preorder> s = preorder_suite(kSuiteSize, kSuiteSeed);
  return s;
}

// Names of rank <= 2 for suite member i, fixed per member.
std::vector<PName> names_for(std::size_t i) {
  std::mt19937_64 rng(kSuiteSeed + 7919 * i);
  return sample_names(suite()[i], NamePoolSpec{2, 8, 3}, rng);
}

CheckOutcome over_suite(const std::function<CheckOutcome(std::size_t)>& check) {
  CheckOutcome total;
  for (std::size_t i = 0; i < suite().size(); ++i) {
    CheckOutcome one = check(i);
    total.checked += one.checked;
    if (!one.ok) {
      total.ok = false;
      total.failure = "suite member " + std::to_string(i) + ": " + one.failure;
      return total;
    }
  }
  return total;
}

CheckOutcome merge(CheckOutcome total, const CheckOutcome& part, const std::string& label) {
  total.checked += part.checked;
  if (total.ok && !part.ok) {
    total.ok = false;
    total.failure = label + ": " + part.failure;
  }
  return total;
}

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<CheckOutcome()> run;
};

CheckOutcome run_atomic_equivalence() {
  return over_suite([](std::size_t i) { return check_atomic_equivalence(suite()[i], names_for(i)); });
}

CheckOutcome run_truth_lemma() {
  return over_suite([](std::size_t i) { return check_truth_lemma(suite()[i], names_for(i)); });
}

CheckOutcome run_nu_mu() {
  std::mt19937_64 rng(kSuiteSeed + 3);
  std::size_t formulas = 0;
  CheckOutcome out = over_suite([&](std::size_t i) {
    formulas += 3;
    return check_nu_mu(suite()[i], names_for(i), 3, rng);
  });
  if (out.ok && formulas < 500) {
    out.ok = false;
    out.failure = "only " + std::to_string(formulas) + " formulas";
  }
  return out;
}

CheckOutcome run_boolean_values() {
  return over_suite([](std::size_t i) { return check_boolean_values(suite()[i], names_for(i)); });
}

CheckOutcome run_completions() {
  return over_suite([](std::size_t i) { return check_completion_isomorphism(suite()[i]); });
}

CheckOutcome run_approachability() {
  CheckOutcome out;
  std::mt19937_64 rng(kSuiteSeed + 6);
  for (std::size_t n = 1; n <= 2; ++n) {
    for (std::size_t lambda = 1; lambda <= 4; ++lambda) {
      for (auto variant : {CollapseVariant::Plain, CollapseVariant::Star, CollapseVariant::Geq}) {
        CollapseForcing c(n, lambda, variant);
        std::string label = "collapse(" + std::to_string(n) + "," + std::to_string(lambda) + "," + std::string(to_string(variant)) + ")";
        out = merge(out, check_projection_family(approachability_instance(c), NamePoolSpec{2, 4, 3}, kNamesPerLevel, rng), label);
      }
    }
  }
  if (!out.ok) return out;
  CollapseForcing c(2, 3, CollapseVariant::Plain);
  CheckOutcome control = check_projection_family(constant_projection_family(c), NamePoolSpec{2, 4, 3}, kNamesPerLevel, rng);
  if (control.ok) {
    out.ok = false;
    out.failure = "the constant-projection control family passed";
  }
  return out;
}

CheckOutcome run_friedman_decoding() {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 20; ++s) seeds.push_back(kSuiteSeed + s);
  return check_friedman_decoding(FriedmanForcing(GroundModel::stage(3), 4), seeds);
}

CheckOutcome run_varphi_star() {
  CheckOutcome out;
  FriedmanForcing small(GroundModel::stage(2), GroundModel::stage(2).size());
  for (std::size_t free = 0; free <= 2; ++free) {
    out = merge(out, check_varphi_star(small, bounded_fo_formulas(free, 2)), "vstage(2)");
  }
  std::mt19937_64 rng(kSuiteSeed + 8);
  FriedmanForcing large(GroundModel::stage(3), GroundModel::stage(3).size());
  return merge(out, check_varphi_star_sampled(large, 60, 2, 2, rng), "vstage(3)");
}

CheckOutcome run_two_step() {
  CheckOutcome out;
  for (std::size_t i = 0; i < suite().size() && out.ok; ++i) {
    for (std::size_t j = 0; j < suite().size() && out.ok; ++j) {
      TwoStepIteration it(suite()[i], check_named(suite()[j], suite()[i].top()));
      out = merge(out, check_composed_generics(it), "pair " + std::to_string(i) + "," + std::to_string(j));
    }
  }
  return out;
}

CheckOutcome run_quotient_transfer() {
  return over_suite([](std::size_t i) { return check_quotient_transfer(suite()[i], names_for(i)); });
}

CheckOutcome run_cli_determinism() {
  CheckOutcome out;
  const char* script = std::getenv("FORCELAB_DETERMINISM_SCRIPT");
  if (script == nullptr) {
    out.ok = false;
    out.failure = "FORCELAB_DETERMINISM_SCRIPT is not set";
    return out;
  }
  int status = std::system(script);
  ++out.checked;
  if (status != 0) {
    out.ok = false;
    out.failure = "determinism script exited with status " + std::to_string(status);
  }
  return out;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "atomic forcing equivalence", 60, run_atomic_equivalence},
      {2, "finite truth lemma", 30, run_truth_lemma},
      {3, "nu/mu contract", 60, run_nu_mu},
      {4, "Boolean values", 30, run_boolean_values},
      {5, "completions", 30, run_completions},
      {6, "approachability by projections", 60, run_approachability},
      {7, "Friedman decoding", 30, run_friedman_decoding},
      {8, "first-order translation", 120, run_varphi_star},
      {9, "two-step iteration", 30, run_two_step},
      {10, "quotient transfer", 30, run_quotient_transfer},
      {11, "CLI determinism", 10, run_cli_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    CheckOutcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.failure = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = out.ok && seconds <= c.limit_seconds;
    if (out.ok && !pass) out.failure = "over the time limit";
    std::printf("%s criterion %d: %s (%zu checks, %.2f s of %.0f s)%s%s\n", pass ? "PASS" : "FAIL", c.number,
                c.title.c_str(), out.checked, seconds, c.limit_seconds, pass ? "" : ": ", pass ? "" : out.failure.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
