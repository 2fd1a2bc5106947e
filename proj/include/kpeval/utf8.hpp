#pragma once

#include <string>
#include <string_view>

namespace kpeval::utf8 {

/// Decodes UTF-8 into code points. Rejects overlong forms, surrogates and
/// truncated sequences with a Utf8Error carrying the byte offset.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view cps);
void append(std::string& out, char32_t cp);

/// Number of code points; input assumed valid.
std::size_t length(std::string_view bytes);

}  // namespace kpeval::utf8
