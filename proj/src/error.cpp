#include "mcnn/error.hpp"
#include "mcnn/types.hpp"

namespace mcnn {

const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::Config: return "Config";
    case ErrorKind::BoundaryParameter: return "BoundaryParameter";
    case ErrorKind::DegenerateTemplate: return "DegenerateTemplate";
    case ErrorKind::EmptyShift: return "EmptyShift";
    case ErrorKind::EmptyComposition: return "EmptyComposition";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::SupportMismatch: return "SupportMismatch";
    case ErrorKind::IncompatibleLabels: return "IncompatibleLabels";
    case ErrorKind::OracleLimit: return "OracleLimit";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DepthLimit: return "DepthLimit";
    }
    return "Unknown";
}

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::Config: return 2;
    case ErrorKind::OracleLimit:
    case ErrorKind::NoConvergence:
    case ErrorKind::DepthLimit: return 4;
    default: return 3;
    }
}

std::string word_string(const std::vector<int>& letters) {
    std::string s;
    s.reserve(letters.size());
    for (int b : letters) s.push_back(letter_char(b));
    return s;
}

std::vector<int> parse_word(const std::string& s) {
    std::vector<int> w;
    for (char c : s) {
        if (c == '+') w.push_back(1);
        else if (c == '-') w.push_back(0);
        else throw Error(ErrorKind::Config, "bad letter in word '" + s + "'");
    }
    return w;
}

}  // namespace mcnn
