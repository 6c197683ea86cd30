#include "orbimorse/error.hpp"

#include <cctype>

#include "orbimorse/rational.hpp"

namespace orbimorse {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedPermutation: return "MalformedPermutation";
        case ErrorCode::ClosureExceedsCap: return "ClosureExceedsCap";
        case ErrorCode::UnknownPoint: return "UnknownPoint";
        case ErrorCode::WeightNotOrbitConstant: return "WeightNotOrbitConstant";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NotAComplex: return "NotAComplex";
        case ErrorCode::CancellationFailure: return "CancellationFailure";
        case ErrorCode::InvarianceFailure: return "InvarianceFailure";
        case ErrorCode::GaugeFailure: return "GaugeFailure";
        case ErrorCode::SignNotOrbitConstant: return "SignNotOrbitConstant";
        case ErrorCode::IndexMismatch: return "IndexMismatch";
        case ErrorCode::NotOrientable: return "NotOrientable";
        case ErrorCode::DivisibilityViolation: return "DivisibilityViolation";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::NotRegular: return "NotRegular";
        case ErrorCode::NotASubcomplex: return "NotASubcomplex";
        case ErrorCode::ActionNotSimplicial: return "ActionNotSimplicial";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "UnknownError";
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
    auto bad = [&] {
        return Error(ErrorCode::ParseError, "not a rational: \"" + std::string(text) + "\"");
    };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    const auto num = text.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
    std::string num_str(num);
    if (num_str[0] == '+') num_str.erase(0, 1);
    Rational q{Integer(num_str), Integer(std::string(den))};
    if (q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
}

}  // namespace orbimorse
