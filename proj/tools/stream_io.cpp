#include "stream_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

namespace vqcd::cli {

namespace {

std::uint64_t read_u64_le(std::istream& in) {
  std::array<unsigned char, 8> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[static_cast<size_t>(i)];
  return v;
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
  std::array<unsigned char, 8> buf{};
  for (int i = 0; i < 8; ++i) buf[static_cast<size_t>(i)] = (v >> (8 * i)) & 0xff;
  out.write(reinterpret_cast<const char*>(buf.data()), 8);
}

static_assert(std::endian::native == std::endian::little,
              "binary stream I/O assumes a little-endian host");

}  // namespace

BlockReader::BlockReader(std::istream& in, StreamFormat format) : in_(in) {
  header_.format = format;
  if (format == StreamFormat::kBinary) {
    header_.n = read_u64_le(in_);
    header_.p = read_u64_le(in_);
    if (!in_) throw StreamParseError("truncated binary header", 0, 0);
  } else {
    std::string line;
    if (!std::getline(in_, line))
      throw StreamParseError("missing 'n p' header line", 0, 0);
    std::istringstream ss(line);
    if (!(ss >> header_.n >> header_.p))
      throw StreamParseError("bad 'n p' header line: " + line, 0, 0);
  }
  if (header_.n < 3 || header_.p < 2)
    throw StreamParseError("header requires n >= 3 and p >= 2", 0, 0);
}

std::optional<DataBlock> BlockReader::next() {
  DataBlock block;
  block.n = header_.n;
  block.p = header_.p;
  block.values.resize(header_.n * header_.p);

  if (header_.format == StreamFormat::kBinary) {
    const std::size_t bytes = block.values.size() * sizeof(double);
    in_.read(reinterpret_cast<char*>(block.values.data()),
             static_cast<std::streamsize>(bytes));
    if (in_.gcount() == 0 && in_.eof()) return std::nullopt;
    if (static_cast<std::size_t>(in_.gcount()) != bytes)
      throw StreamParseError("truncated binary block", blocks_read_ + 1, 0);
    ++blocks_read_;
    return block;
  }

  std::string line;
  std::size_t row = 0;
  while (row < header_.n) {
    if (!std::getline(in_, line)) {
      if (row == 0) return std::nullopt;  // clean end of stream
      throw StreamParseError("stream ended mid-block", blocks_read_ + 1, row + 1);
    }
    // Skip blank separator lines between blocks, but not inside one.
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) {
      if (row == 0) continue;
      throw StreamParseError("blank line inside block", blocks_read_ + 1,
                             row + 1);
    }
    ss.clear();
    ss.str(line);
    for (std::size_t j = 0; j < header_.p; ++j) {
      if (!(ss >> block.values[row * header_.p + j]))
        throw StreamParseError("row has fewer than p values",
                               blocks_read_ + 1, row + 1);
    }
    double extra;
    if (ss >> extra)
      throw StreamParseError("row has more than p values", blocks_read_ + 1,
                             row + 1);
    ++row;
  }
  ++blocks_read_;
  return block;
}

BlockWriter::BlockWriter(std::ostream& out, StreamHeader header)
    : out_(out), header_(header) {
  if (header_.format == StreamFormat::kBinary) {
    write_u64_le(out_, header_.n);
    write_u64_le(out_, header_.p);
  } else {
    out_ << header_.n << ' ' << header_.p << '\n';
  }
}

void BlockWriter::write(const DataBlock& block) {
  if (block.n != header_.n || block.p != header_.p)
    throw std::invalid_argument("BlockWriter: block dims do not match header");
  if (header_.format == StreamFormat::kBinary) {
    out_.write(reinterpret_cast<const char*>(block.values.data()),
               static_cast<std::streamsize>(block.values.size() *
                                            sizeof(double)));
    return;
  }
  out_.precision(17);
  for (std::size_t i = 0; i < block.n; ++i) {
    for (std::size_t j = 0; j < block.p; ++j) {
      if (j) out_ << ' ';
      out_ << block(i, j);
    }
    out_ << '\n';
  }
  out_ << '\n';
}

}  // namespace vqcd::cli
