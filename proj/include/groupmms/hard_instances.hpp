#pragma once

#include "groupmms/instance.hpp"
#include "groupmms/maximin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace groupmms {

// Catalog of instances witnessing the impossibility results and ratio upper
// bounds. Names encode the group shape they certify.
enum class HardInstanceName {
  prop1_fourtwo,     // shape (4,2): some agent with positive share must get 0
  prop2_threethree,  // shape (3,3): same
  thm1_twoone,       // shape (2,1): best ratio exactly 3/4
  thm2_manyone,      // shape (n1,1): best ratio at most 1/floor(f_value(n1)/2)
  thm3_twotwo,       // shape (2,2): best ratio exactly 1/2
  thm7_multigroup,   // k groups, pairs behind one large group: best ratio 0
};

struct HardInstanceSpec {
  HardInstanceName name = HardInstanceName::prop1_fourtwo;
  std::size_t param = 0;  // n1 for thm2_manyone, group count k for thm7_multigroup

  std::string label() const;
};

std::optional<HardInstanceName> hard_instance_from_name(const std::string& name);
std::vector<std::string> hard_instance_names();
bool hard_instance_needs_param(HardInstanceName name);

// Exact utility matrices. thm2_manyone requires param n1 >= 2; thm7_multigroup
// requires param k >= 2. Throws std::invalid_argument on bad params.
Instance generate(const HardInstanceSpec& spec);

struct ExpectedBestRatio {
  ExtRational ratio;
  bool is_exact = true;  // false: `ratio` is only an upper bound
};

ExpectedBestRatio expected_best_ratio(const HardInstanceSpec& spec);

struct VerifyReport {
  HardInstanceSpec spec;
  ExpectedBestRatio expected;
  ExtRational computed;       // from the exhaustive egalitarian-ratio search
  Allocation best_allocation; // argmax allocation found by the search
  bool pass = false;
};

// Exhaustively recomputes the best egalitarian ratio and checks it against
// the catalog claim (equality, or <= for upper bounds).
VerifyReport verify_claim(const HardInstanceSpec& spec);

}  // namespace groupmms
