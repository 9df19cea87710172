#include "diamlaw/batch_io.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace diamlaw {

namespace {

constexpr std::array<char, 4> kMagic{'D', 'L', 'P', 'B'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "binary batch dumps assume a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw std::runtime_error("read_batch_binary: truncated stream");
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_batch_csv(std::ostream& out, const SampleBatch& batch) {
  out << "# diamlaw-batch a=" << format_double(batch.shape.a())
      << " method=" << to_string(batch.method)
      << " master_seed=" << batch.stream.master_seed
      << " stream_index=" << batch.stream.stream_index
      << " n=" << batch.points.size() << '\n';
  out << "x1,x2,x3\n";
  for (const auto& p : batch.points) {
    out << format_double(p.x1) << ',' << format_double(p.x2) << ','
        << format_double(p.x3) << '\n';
  }
}

void write_batch_binary(std::ostream& out, const SampleBatch& batch) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kVersion);
  put<double>(out, batch.shape.a());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(batch.method));
  put<std::uint64_t>(out, batch.stream.master_seed);
  put<std::uint64_t>(out, batch.stream.stream_index);
  put<std::uint64_t>(out, batch.points.size());
  for (const auto& p : batch.points) {
    put(out, p.x1);
    put(out, p.x2);
    put(out, p.x3);
  }
}

SampleBatch read_batch_binary(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw std::runtime_error("read_batch_binary: bad magic");
  }
  if (get<std::uint32_t>(in) != kVersion) {
    throw std::runtime_error("read_batch_binary: unsupported version");
  }
  SampleBatch batch;
  batch.shape = ShapeParam(get<double>(in));
  const auto method = get<std::uint32_t>(in);
  if (method > static_cast<std::uint32_t>(SampleMethod::disk_diagnostic)) {
    throw std::runtime_error("read_batch_binary: unknown method");
  }
  batch.method = static_cast<SampleMethod>(method);
  batch.stream.master_seed = get<std::uint64_t>(in);
  batch.stream.stream_index = get<std::uint64_t>(in);
  const auto n = get<std::uint64_t>(in);
  batch.points.resize(n);
  for (auto& p : batch.points) {
    p.x1 = get<double>(in);
    p.x2 = get<double>(in);
    p.x3 = get<double>(in);
  }
  batch.proposals = n;
  return batch;
}

}  // namespace diamlaw
