#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "vqcd/corrstats.hpp"

namespace vqcd::cli {

enum class StreamFormat { kText, kBinary };

/// Text: first line "n p", then per block n whitespace-separated rows of
/// p floats, blocks separated by a blank line. Binary: 16-byte header of
/// two little-endian u64 dims, then contiguous little-endian f64 blocks.
struct StreamHeader {
  std::size_t n = 0;
  std::size_t p = 0;
  StreamFormat format = StreamFormat::kText;
};

class StreamParseError : public std::runtime_error {
 public:
  StreamParseError(std::string msg, std::size_t block, std::size_t row)
      : std::runtime_error(std::move(msg)), block_(block), row_(row) {}
  std::size_t block() const { return block_; }
  std::size_t row() const { return row_; }

 private:
  std::size_t block_, row_;
};

/// Sequential block reader over a text or binary stream.
class BlockReader {
 public:
  BlockReader(std::istream& in, StreamFormat format);

  const StreamHeader& header() const { return header_; }

  /// Next block, or nullopt at a clean end of stream. Throws
  /// StreamParseError (citing block and row) on malformed input.
  std::optional<DataBlock> next();

 private:
  std::istream& in_;
  StreamHeader header_;
  std::size_t blocks_read_ = 0;
};

/// Writes blocks in either format; used by tests and fixture generation.
class BlockWriter {
 public:
  BlockWriter(std::ostream& out, StreamHeader header);
  void write(const DataBlock& block);

 private:
  std::ostream& out_;
  StreamHeader header_;
};

}  // namespace vqcd::cli
