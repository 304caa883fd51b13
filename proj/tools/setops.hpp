#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ist/config.hpp"

namespace ist::bench {

enum class SetOp { unite, intersect, subtract };

struct FileError : std::runtime_error {
  FileError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        line(line) {}
  explicit FileError(const std::string& what)
      : std::runtime_error(what), line(0) {}
  std::size_t line;
};

// Newline-separated signed decimal 64-bit integers. Throws FileError with
// the offending line number on malformed content, or without one when the
// file cannot be opened.
std::vector<Key> read_key_file(const std::filesystem::path& path);

void write_key_file(const std::filesystem::path& path,
                    std::span<const Key> keys);

// Computes A op B through the batched tree operations and writes the
// sorted result to out.
void run_setops(SetOp op, const std::filesystem::path& file_a,
                const std::filesystem::path& file_b,
                const std::filesystem::path& out);

}  // namespace ist::bench
