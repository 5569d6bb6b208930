#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <string>

#include "oseq/engine.hpp"

namespace oseq {

namespace {

constexpr std::array<char, 8> kMagic = {'O', 'S', 'E', 'Q', 'L', 'Y', 'R', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                                     static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(bytes.data(), bytes.size());
}

class Reader {
 public:
  Reader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  void bytes(void* dst, std::size_t n, const char* what) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) fail(std::string("truncated while reading ") + what);
  }

  std::uint32_t u32(const char* what) {
    unsigned char b[4];
    bytes(b, 4, what);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }

  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

  [[noreturn]] void fail(const std::string& why) const { throw CheckpointError(name_ + ": " + why); }

 private:
  std::istream& in_;
  std::string name_;
};

}  // namespace

std::filesystem::path checkpoint_path(const std::filesystem::path& dir, int p) {
  return dir / ("layer_" + std::to_string(p) + ".oseq");
}

std::optional<std::filesystem::path> latest_checkpoint(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return std::nullopt;
  std::optional<std::filesystem::path> best;
  long best_p = -1;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (!name.starts_with("layer_") || !name.ends_with(".oseq")) continue;
    const auto digits = name.substr(6, name.size() - 6 - 5);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      continue;
    const long p = std::stol(digits);
    if (p > best_p) {
      best_p = p;
      best = entry.path();
    }
  }
  return best;
}

void save_layer(const Layer& layer, const std::filesystem::path& path) {
  if (!layer.complete()) throw CheckpointError("refusing to save incomplete layer p=" + std::to_string(layer.p()));
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot open " + tmp.string() + " for writing (layer p=" + std::to_string(layer.p()) + ")");
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, kCheckpointVersion);
    put_u32(out, static_cast<std::uint32_t>(layer.p()));
    put_u32(out, static_cast<std::uint32_t>(layer.D()));
    for (int n = 0; n < layer.D(); ++n)
      for (int k = 0; k <= n; ++k) {
        const EntryView v = layer.view(n, k);
        std::uint32_t count = 0;
        for (int d = v.lo; d <= v.hi; ++d) count += !layer.coefficient(n, k, d).is_zero();
        put_u32(out, count);
        for (int d = v.lo; d <= v.hi; ++d) {
          const BigCount c = limbs_to_bigcount(v.data + (d - v.lo), v.stride, layer.width());
          if (c.is_zero()) continue;
          const auto bytes = to_le_bytes(c);
          put_u32(out, static_cast<std::uint32_t>(d));
          put_u32(out, static_cast<std::uint32_t>(bytes.size()));
          out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        }
      }
    out.flush();
    if (!out) throw CheckpointError("write failed for " + tmp.string() + " (layer p=" + std::to_string(layer.p()) + ")");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw CheckpointError("cannot move checkpoint into place at " + path.string() + " (layer p=" +
                          std::to_string(layer.p()) + "): " + ec.message());
}

Layer load_layer(const std::filesystem::path& path, std::optional<int> expected_D) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  Reader r(in, path.string());

  std::array<char, 8> magic{};
  r.bytes(magic.data(), magic.size(), "magic");
  if (magic != kMagic) r.fail("bad magic, not a layer checkpoint");
  const std::uint32_t version = r.u32("version");
  if (version != kCheckpointVersion)
    r.fail("unsupported version " + std::to_string(version) + " (expected " + std::to_string(kCheckpointVersion) + ")");
  const std::uint32_t p = r.u32("p");
  const std::uint32_t D = r.u32("D");
  if (p < 1 || D < 1 || D > 100000) r.fail("implausible header p=" + std::to_string(p) + " D=" + std::to_string(D));
  if (expected_D && static_cast<int>(D) != *expected_D)
    r.fail("checkpoint was written for D=" + std::to_string(D) + ", this run uses D=" + std::to_string(*expected_D));

  // Read everything before building so the limb width can fit the largest value.
  struct Item {
    int degree;
    BigCount value;
  };
  std::vector<std::vector<Item>> entries;
  entries.reserve(Layer::entry_index(static_cast<int>(D), 0));
  std::size_t max_bytes = 1;
  std::vector<std::uint8_t> buffer;
  for (std::uint32_t n = 0; n < D; ++n)
    for (std::uint32_t k = 0; k <= n; ++k) {
      const std::uint32_t count = r.u32("entry length");
      if (count > D + 1) r.fail("entry (" + std::to_string(n) + "," + std::to_string(k) + ") claims " + std::to_string(count) + " terms");
      std::vector<Item> items;
      items.reserve(count);
      int last = -1;
      for (std::uint32_t c = 0; c < count; ++c) {
        const std::uint32_t degree = r.u32("degree");
        const std::uint32_t nbytes = r.u32("byte length");
        if (degree > D || static_cast<int>(degree) <= last) r.fail("degrees out of order in entry (" + std::to_string(n) + "," + std::to_string(k) + ")");
        if (nbytes > 4096) r.fail("coefficient too long");
        buffer.resize(nbytes);
        r.bytes(buffer.data(), nbytes, "coefficient bytes");
        items.push_back({static_cast<int>(degree), from_le_bytes(buffer.data(), nbytes)});
        max_bytes = std::max<std::size_t>(max_bytes, nbytes);
        last = static_cast<int>(degree);
      }
      entries.push_back(std::move(items));
    }
  if (!r.at_end()) r.fail("trailing bytes after the last entry");

  const int width = static_cast<int>((max_bytes + 7) / 8);
  Layer layer(static_cast<int>(p), static_cast<int>(D), width);
  std::vector<BigCount> dense;
  for (const auto& items : entries) {
    if (items.empty()) {
      layer.append_zero();
      continue;
    }
    const int lo = items.front().degree;
    dense.assign(static_cast<std::size_t>(items.back().degree - lo + 1), BigCount(0));
    for (const auto& item : items) dense[static_cast<std::size_t>(item.degree - lo)] = item.value;
    layer.append_exact(lo, dense);
  }
  return layer;
}

}  // namespace oseq
