#pragma once

#include <atomic>
#include <cstdint>
#include <list>
#include <mutex>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "decoynet/protocol/study.hpp"
#include "decoynet/protocol/wire.hpp"

namespace decoynet {

struct ListenAddress {
  std::string host = "127.0.0.1";
  std::uint16_t port = 7878;
};

/// "host:port", "host" or ":port". Port 0 asks the kernel for a free port.
ListenAddress parse_listen_address(std::string_view text);

/// Framed request/response over TCP. One thread per connection; each
/// request gets exactly one response frame. A framing error gets an error
/// frame and the connection is closed.
class TcpServer {
 public:
  TcpServer(Study& study, ListenAddress address);
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  /// Binds and starts accepting in the background. Throws on bind failure.
  void start();
  void stop();
  /// Blocks until stop() is called from another thread.
  void wait();
  std::uint16_t port() const { return port_; }

 private:
  void accept_loop();
  void serve(int fd);

  Study& study_;
  ListenAddress address_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex conn_mutex_;
  std::list<std::thread> workers_;
  std::list<int> conn_fds_;
};

/// Blocking client used by tests and the `play` subcommand.
class TcpClient {
 public:
  TcpClient(const std::string& host, std::uint16_t port);
  ~TcpClient();
  TcpClient(const TcpClient&) = delete;
  TcpClient& operator=(const TcpClient&) = delete;

  void send_raw(std::string_view bytes);
  /// Throws WireError if the server closed the connection.
  nlohmann::json receive();
  nlohmann::json request(const nlohmann::json& message);

 private:
  int fd_ = -1;
  FrameDecoder decoder_;
};

}  // namespace decoynet
