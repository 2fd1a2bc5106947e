#include "kpeval/error.hpp"

#include <fmt/format.h>

namespace kpeval {

Utf8Error::Utf8Error(std::size_t offset)
    : Error(fmt::format("invalid UTF-8 at byte offset {}", offset)), offset_(offset) {}

LexiconError::LexiconError(const std::string& path, std::size_t line, const std::string& what)
    : Error(line == 0 ? fmt::format("{}: {}", path, what)
                      : fmt::format("{}:{}: {}", path, line, what)),
      line_(line) {}

}  // namespace kpeval
