#include "decoynet/protocol/tcp_server.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

namespace decoynet {

namespace {

[[noreturn]] void sys_fail(const std::string& what) {
  throw std::runtime_error(what + ": " + std::strerror(errno));
}

bool write_all(int fd, std::string_view bytes) {
  while (!bytes.empty()) {
    const ssize_t n = ::send(fd, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

}  // namespace

ListenAddress parse_listen_address(std::string_view text) {
  ListenAddress out;
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) {
    if (!text.empty()) out.host = std::string(text);
    return out;
  }
  if (colon > 0) out.host = std::string(text.substr(0, colon));
  const auto port = text.substr(colon + 1);
  if (port.empty() || port.size() > 5 || port.find_first_not_of("0123456789") != std::string_view::npos) {
    throw std::invalid_argument("bad port in listen address '" + std::string(text) + "'");
  }
  const int value = std::stoi(std::string(port));
  if (value > 65535) throw std::invalid_argument("port out of range");
  out.port = static_cast<std::uint16_t>(value);
  return out;
}

TcpServer::TcpServer(Study& study, ListenAddress address) : study_(study), address_(std::move(address)) {}

TcpServer::~TcpServer() { stop(); }

void TcpServer::start() {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* found = nullptr;
  const auto port = std::to_string(address_.port);
  if (const int rc = ::getaddrinfo(address_.host.c_str(), port.c_str(), &hints, &found); rc != 0) {
    throw std::runtime_error("cannot resolve " + address_.host + ": " + ::gai_strerror(rc));
  }
  listen_fd_ = ::socket(found->ai_family, found->ai_socktype, found->ai_protocol);
  if (listen_fd_ < 0) {
    ::freeaddrinfo(found);
    sys_fail("socket");
  }
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  const int bound = ::bind(listen_fd_, found->ai_addr, found->ai_addrlen);
  ::freeaddrinfo(found);
  if (bound < 0 || ::listen(listen_fd_, 64) < 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    sys_fail("bind " + address_.host + ":" + port);
  }
  sockaddr_in actual{};
  socklen_t len = sizeof actual;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&actual), &len);
  port_ = ntohs(actual.sin_port);
  acceptor_ = std::thread([this] { accept_loop(); });
}

void TcpServer::accept_loop() {
  while (!stopping_) {
    pollfd p{listen_fd_, POLLIN, 0};
    const int ready = ::poll(&p, 1, 100);
    if (ready <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    std::lock_guard lock(conn_mutex_);
    if (stopping_) {
      ::close(fd);
      break;
    }
    conn_fds_.push_back(fd);
    workers_.emplace_back([this, fd] { serve(fd); });
  }
}

void TcpServer::serve(int fd) {
  FrameDecoder decoder;
  char buf[8192];
  bool open = true;
  while (open && !stopping_) {
    const ssize_t n = ::recv(fd, buf, sizeof buf, 0);
    if (n <= 0) {
      if (n < 0 && errno == EINTR) continue;
      break;
    }
    decoder.feed({buf, static_cast<std::size_t>(n)});
    try {
      while (auto body = decoder.next()) {
        if (!write_all(fd, encode_message(study_.handle_text(*body)))) {
          open = false;
          break;
        }
      }
    } catch (const WireError& e) {
      write_all(fd, encode_message(study_.reject(e.what(), {buf, static_cast<std::size_t>(n)})));
      open = false;
    }
  }
  std::lock_guard lock(conn_mutex_);
  conn_fds_.remove(fd);
  ::close(fd);
}

void TcpServer::stop() {
  if (stopping_.exchange(true)) return;
  if (acceptor_.joinable()) acceptor_.join();
  std::list<std::thread> workers;
  {
    std::lock_guard lock(conn_mutex_);
    for (int fd : conn_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& t : workers) t.join();
  if (listen_fd_ >= 0) ::close(listen_fd_);
  listen_fd_ = -1;
}

void TcpServer::wait() {
  while (!stopping_) std::this_thread::sleep_for(std::chrono::milliseconds(200));
}

TcpClient::TcpClient(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* found = nullptr;
  if (const int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &found); rc != 0) {
    throw std::runtime_error("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  fd_ = ::socket(found->ai_family, found->ai_socktype, found->ai_protocol);
  const bool ok = fd_ >= 0 && ::connect(fd_, found->ai_addr, found->ai_addrlen) == 0;
  ::freeaddrinfo(found);
  if (!ok) sys_fail("connect " + host + ":" + std::to_string(port));
}

TcpClient::~TcpClient() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpClient::send_raw(std::string_view bytes) {
  if (!write_all(fd_, bytes)) sys_fail("send");
}

nlohmann::json TcpClient::receive() {
  char buf[8192];
  for (;;) {
    if (auto body = decoder_.next()) return nlohmann::json::parse(*body);
    const ssize_t n = ::recv(fd_, buf, sizeof buf, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw WireError("connection closed");
    decoder_.feed({buf, static_cast<std::size_t>(n)});
  }
}

nlohmann::json TcpClient::request(const nlohmann::json& message) {
  send_raw(encode_message(message));
  return receive();
}

}  // namespace decoynet
