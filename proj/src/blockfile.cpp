#include "qseries/blockfile.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qseries {

namespace {

std::string_view trim(std::string_view s)
{
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

} // namespace

FormatError::FormatError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
{
}

std::optional<std::string> Block::get(std::string_view key) const
{
    for (const auto& [k, v] : entries) {
        if (k == key) {
            return v;
        }
    }
    return std::nullopt;
}

const std::string& Block::require(std::string_view key) const
{
    for (const auto& [k, v] : entries) {
        if (k == key) {
            return v;
        }
    }
    throw FormatError(line, "[" + kind + "] block is missing key '" + std::string(key) + "'");
}

std::int64_t Block::require_int(std::string_view key) const
{
    const std::string& text = require(key);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw FormatError(line, "key '" + std::string(key) + "' needs an integer, got '" + text + "'");
    }
    return value;
}

std::int64_t Block::get_int(std::string_view key, std::int64_t fallback) const
{
    return get(key) ? require_int(key) : fallback;
}

void Block::check_keys(std::initializer_list<std::string_view> allowed) const
{
    for (const auto& [k, v] : entries) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
            throw FormatError(line, "unknown key '" + k + "' in [" + kind + "] block");
        }
    }
}

std::vector<Block> parse_blocks(std::string_view text)
{
    std::vector<Block> blocks;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++lineno;
        std::string_view line = trim(text.substr(start, end - start));
        start = end + 1;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw FormatError(lineno, "malformed section header");
            }
            blocks.push_back(Block{std::string(trim(line.substr(1, line.size() - 2))), lineno, {}});
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw FormatError(lineno, "expected key=value");
        }
        if (blocks.empty()) {
            throw FormatError(lineno, "key=value outside any [section]");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw FormatError(lineno, "empty key");
        }
        if (blocks.back().get(key)) {
            throw FormatError(lineno, "duplicate key '" + key + "'");
        }
        blocks.back().entries.emplace_back(std::move(key), std::move(value));
    }
    return blocks;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace qseries
