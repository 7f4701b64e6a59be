#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hilbcone {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    SingularMatrixError(std::size_t rank, std::size_t size)
        : Error("singular matrix: rank " + std::to_string(rank) + " of " + std::to_string(size)),
          rank_(rank) {}
    std::size_t rank() const noexcept { return rank_; }

private:
    std::size_t rank_;
};

struct ZeroRayError : Error {
    ZeroRayError() : Error("zero vector does not span a ray") {}
};

class SchemaError : public Error {
public:
    SchemaError(std::string pointer, const std::string& what)
        : Error(pointer + ": " + what), pointer_(std::move(pointer)) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

struct DataInvariantError : Error {
    using Error::Error;
};

class UnknownClassError : public Error {
public:
    UnknownClassError(const std::string& name, std::vector<std::string> near);
    const std::vector<std::string>& near_matches() const noexcept { return near_; }

private:
    std::vector<std::string> near_;
};

struct UnknownLabelError : Error {
    using Error::Error;
};

struct UnknownBasisError : Error {
    using Error::Error;
};

// Unknown pairing, basis change, cone or worksheet constant id.
struct UnknownEntryError : Error {
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

struct NoPairingPathError : Error {
    using Error::Error;
};

struct NoConversionPathError : Error {
    using Error::Error;
};

struct UnknownCheckError : Error {
    using Error::Error;
};

}  // namespace hilbcone
