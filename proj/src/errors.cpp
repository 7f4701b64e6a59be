#include "hilbcone/errors.hpp"

namespace hilbcone {

namespace {

std::string joined(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& x : items) {
        if (!s.empty()) s += ", ";
        s += x;
    }
    return s;
}

}  // namespace

UnknownClassError::UnknownClassError(const std::string& name, std::vector<std::string> near)
    : Error("unknown class '" + name + "'" + (near.empty() ? std::string() : "; did you mean: " + joined(near))),
      near_(std::move(near)) {}

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : Error("parse error at byte " + std::to_string(offset) + ": expected " + joined(expected) + ", found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

}  // namespace hilbcone
