#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qseries {

class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// One "[kind]" section followed by key=value lines.
struct Block {
    std::string kind;
    std::size_t line = 0;
    std::vector<std::pair<std::string, std::string>> entries;

    std::optional<std::string> get(std::string_view key) const;
    const std::string& require(std::string_view key) const;
    std::int64_t require_int(std::string_view key) const;
    std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
    /// Throws on keys outside the allowed set.
    void check_keys(std::initializer_list<std::string_view> allowed) const;
};

/// Blank lines and lines starting with '#' are ignored.
std::vector<Block> parse_blocks(std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

} // namespace qseries
