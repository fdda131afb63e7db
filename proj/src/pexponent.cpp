#include "dtmfilt/pexponent.hpp"

#include <charconv>

namespace dtmf {

PExponent PExponent::parse(const std::string& text) {
    if (text == "inf" || text == "INF" || text == "Inf") return infinity();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParameterError("cannot parse p '" + text + "'");
    }
    return PExponent(value);
}

std::string PExponent::to_string() const {
    if (is_infinite()) return "inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value_);
    return std::string(buf, res.ptr);
}

}  // namespace dtmf
