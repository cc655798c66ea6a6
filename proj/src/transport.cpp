#include "dsa/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

#include "dsa/messages.hpp"

namespace dsa {

namespace {

[[noreturn]] void sys_error(const std::string& what) {
  throw std::runtime_error(what + ": " + std::strerror(errno));
}

sockaddr_in make_addr(const std::string& host, int port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    throw std::runtime_error("endpoint host must be an IPv4 address, got " + host);
  }
  return addr;
}

void write_all(int fd, const char* data, std::size_t size) {
  std::size_t sent = 0;
  while (sent < size) {
    const ssize_t n = ::send(fd, data + sent, size - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      sys_error("send");
    }
    sent += static_cast<std::size_t>(n);
  }
}

// Reads until '\n'; false on orderly EOF at a line boundary.
bool read_line(int fd, std::string& buffer, std::string& line) {
  for (;;) {
    const auto pos = buffer.find('\n');
    if (pos != std::string::npos) {
      line = buffer.substr(0, pos);
      buffer.erase(0, pos + 1);
      return true;
    }
    char chunk[4096];
    const ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      sys_error("recv");
    }
    if (n == 0) {
      if (!buffer.empty()) throw std::runtime_error("connection closed mid-line");
      return false;
    }
    buffer.append(chunk, static_cast<std::size_t>(n));
  }
}

}  // namespace

Endpoint parse_endpoint(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size()) {
    throw std::runtime_error("endpoint must be host:port, got '" + text + "'");
  }
  Endpoint ep;
  ep.host = text.substr(0, colon);
  try {
    ep.port = std::stoi(text.substr(colon + 1));
  } catch (...) {
    throw std::runtime_error("bad endpoint port in '" + text + "'");
  }
  if (ep.port < 0 || ep.port > 65535) {
    throw std::runtime_error("endpoint port out of range in '" + text + "'");
  }
  return ep;
}

TcpClient::TcpClient(const std::string& host, int port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) sys_error("socket");
  const sockaddr_in addr = make_addr(host, port);
  if (::connect(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    const int saved = errno;
    ::close(fd_);
    fd_ = -1;
    errno = saved;
    sys_error("connect to " + host + ":" + std::to_string(port));
  }
  int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

TcpClient::~TcpClient() { close(); }

void TcpClient::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void TcpClient::send_line(const std::string& line) {
  std::string framed = line;
  framed.push_back('\n');
  write_all(fd_, framed.data(), framed.size());
}

std::string TcpClient::recv_line() {
  std::string line;
  if (!read_line(fd_, buffer_, line)) {
    throw std::runtime_error("peer closed the connection");
  }
  return line;
}

std::string TcpClient::request(const std::string& line) {
  if (fd_ < 0) throw std::runtime_error("transport is closed");
  send_line(line);
  return recv_line();
}

TcpServer::TcpServer(const std::string& host, int port) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) sys_error("socket");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr = make_addr(host, port);
  if (::bind(listen_fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    sys_error("bind " + host + ":" + std::to_string(port));
  }
  if (::listen(listen_fd_, 1) != 0) sys_error("listen");
  socklen_t len = sizeof(addr);
  if (::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
    sys_error("getsockname");
  }
  port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer() {
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::serve_once(const LineHandler& handler) {
  const int fd = ::accept(listen_fd_, nullptr, nullptr);
  if (fd < 0) sys_error("accept");
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  std::string buffer;
  std::string line;
  try {
    while (read_line(fd, buffer, line)) {
      std::string reply;
      bool failed = false;
      try {
        reply = handler(line);
      } catch (const std::exception& e) {
        // Surface the fault to the peer instead of crashing the server.
        reply = encode_error(e.what());
        failed = true;
      }
      reply.push_back('\n');
      write_all(fd, reply.data(), reply.size());
      if (failed) break;
    }
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
}

}  // namespace dsa
