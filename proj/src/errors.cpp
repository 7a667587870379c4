#include "wlspec/errors.hpp"

namespace wlspec {

ParseError::ParseError(std::size_t offset, const std::string& what)
    : Error("byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

}  // namespace wlspec
