#include "reference_seeds.hpp"

namespace fixturegen::seeds {

// clang-format off
const std::vector<long> k243E_h1 = {
    1, 0, 0, 0, -3, 0, -2, -3, 0, -2, 0, 0, 1, 0, 0, 1, -3, 0, 2};
const std::vector<long> k243E_h2 = {
    0, 1, 0, 0, -1, 0, -3, -4, 0, -3, 4, 0, 3, 2, 0, 3, 0, 0, 6};
const std::vector<long> k243E_h3 = {
    0, 0, 0, 1, 0, 0, -2, -3, 0, -1, 3, 0, 1, 3, 0, 3, 0, 0, 3};

const std::vector<long> k178D_f1 = {
    1, 1, 0, 1, 0, 0, 0, 1, 3, 0, 2, 0, 0, 0, -6, 1, -2, 3, -4};
const std::vector<long> k178D_f2 = {
    0, 0, 1, 0, -1, 1, 0, 0, -1, -1, 0, 1, -2, 0, 1, 0, 1, -1, 1};
const std::vector<long> k178D_f3 = {
    0, 0, 0, 0, 0, 0, 1, 0, -2, 0, 0, 0, -1, 1, 2, 0, 2, -2, 0};

const std::vector<long> k178C_f1 = {
    1, -1, 0, 1, -3, 0, -2, -1, -2, 3, 0, 0, -2, 2};
const std::vector<long> k178C_f2 = {
    0, 0, 1, 0, -2, -1, 0, 0, -2, 2, 2, 1, 0, 0, 1, 0, 2, 2};

const std::vector<long> k89A = {1, -1, -1, -1, -1, 1, -4, 3, -2, 1};
// clang-format on

int first_seed_mismatch(const modcurve::RatSeries& got,
                        const std::vector<long>& want) {
  for (size_t i = 0; i < want.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (n > got.trunc_order()) return n;
    if (got.at(n) != modcurve::Rat(want[i])) return n;
  }
  return 0;
}

}  // namespace fixturegen::seeds
