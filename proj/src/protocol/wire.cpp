#include "decoynet/protocol/wire.hpp"

namespace decoynet {

namespace {
constexpr std::size_t kMaxDigits = 7;  // 1 MiB is 7 digits
}

std::string encode_frame(std::string_view body) {
  if (body.size() > kMaxFrameBytes) throw WireError("frame exceeds 1 MiB");
  std::string out = std::to_string(body.size());
  out += '\n';
  out += body;
  return out;
}

std::string encode_message(const nlohmann::json& message) { return encode_frame(std::string_view(message.dump())); }

void FrameDecoder::feed(std::string_view bytes) { buffer_.append(bytes); }

std::optional<std::string> FrameDecoder::next() {
  const auto nl = buffer_.find('\n');
  if (nl == std::string::npos) {
    if (buffer_.size() > kMaxDigits) throw WireError("length prefix too long");
    for (char c : buffer_) {
      if (c < '0' || c > '9') throw WireError("length prefix must be decimal digits");
    }
    return std::nullopt;
  }
  if (nl == 0 || nl > kMaxDigits) throw WireError("bad length prefix");
  std::size_t length = 0;
  for (std::size_t i = 0; i < nl; ++i) {
    const char c = buffer_[i];
    if (c < '0' || c > '9') throw WireError("length prefix must be decimal digits");
    length = length * 10 + static_cast<std::size_t>(c - '0');
  }
  if (length > kMaxFrameBytes) throw WireError("frame exceeds 1 MiB");
  if (buffer_.size() - nl - 1 < length) return std::nullopt;
  std::string body = buffer_.substr(nl + 1, length);
  buffer_.erase(0, nl + 1 + length);
  return body;
}

}  // namespace decoynet
