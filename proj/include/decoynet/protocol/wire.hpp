#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

// Framing: ASCII decimal byte count, '\n', then exactly that many bytes of
// UTF-8 JSON. No trailing delimiter. See docs/protocol.md.

namespace decoynet {

inline constexpr std::size_t kMaxFrameBytes = 1 << 20;

class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string encode_frame(std::string_view body);
std::string encode_message(const nlohmann::json& message);

/// Incremental decoder for a byte stream. Throws WireError on a bad length
/// prefix or an oversized frame; the stream is unusable afterwards.
class FrameDecoder {
 public:
  void feed(std::string_view bytes);
  std::optional<std::string> next();
  std::size_t buffered() const { return buffer_.size(); }

 private:
  std::string buffer_;
};

}  // namespace decoynet
