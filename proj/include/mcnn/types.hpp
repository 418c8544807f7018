#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace mcnn {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using IMatrix = Mat<int>;
using DMatrix = Mat<double>;
using DVec = Vec<double>;
using DRowVec = RowVec<double>;

// letters are stored as bits: '-' = 0, '+' = 1
inline char letter_char(int bit) { return bit ? '+' : '-'; }
inline int sign_of_bit(int bit) { return bit ? 1 : -1; }
inline int bit_of_sign(int s) { return s > 0 ? 1 : 0; }

std::string word_string(const std::vector<int>& letters);
std::vector<int> parse_word(const std::string& s);

}  // namespace mcnn
