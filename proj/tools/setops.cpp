#include "setops.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include "ist/primitives.hpp"
#include "ist/tree.hpp"

namespace ist::bench {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  return s;
}

}  // namespace

std::vector<Key> read_key_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path.string());
  std::vector<Key> keys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    Key value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw FileError(path.string(), line_no, "not a 64-bit integer: '" +
                                                  std::string(text) + "'");
    keys.push_back(value);
  }
  return keys;
}

void write_key_file(const std::filesystem::path& path,
                    std::span<const Key> keys) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot open " + path.string() + " for writing");
  for (Key k : keys) out << k << '\n';
  if (!out) throw FileError("write failed on " + path.string());
}

void run_setops(SetOp op, const std::filesystem::path& file_a,
                const std::filesystem::path& file_b,
                const std::filesystem::path& out) {
  const std::vector<Key> a = normalize_batch(read_key_file(file_a));
  const std::vector<Key> b = normalize_batch(read_key_file(file_b));

  Tree tree = Tree::from_sorted(a);
  std::vector<Key> result;
  switch (op) {
    case SetOp::unite:
      tree.insert_batched(b);
      result = tree.to_sorted_keys();
      break;
    case SetOp::subtract:
      tree.remove_batched(b);
      result = tree.to_sorted_keys();
      break;
    case SetOp::intersect: {
      const auto present = tree.contains_batched(b);
      result = prim::filter(std::span<const Key>(b),
                            std::span<const std::uint8_t>(present));
      break;
    }
  }
  write_key_file(out, result);
}

}  // namespace ist::bench
