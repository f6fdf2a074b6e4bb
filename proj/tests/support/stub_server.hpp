#pragma once

// Local HTTP stub used by backend/tool tests; everything stays on loopback.

#include <functional>
#include <memory>
#include <string>
#include <thread>

#include <httplib.h>

namespace testsupport {

class StubServer {
public:
    StubServer() : server_(std::make_unique<httplib::Server>()) {}

    httplib::Server& http() { return *server_; }

    void start() {
        port_ = server_->bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_->listen_after_bind(); });
        server_->wait_until_ready();
    }

    ~StubServer() {
        if (server_) server_->stop();
        if (thread_.joinable()) thread_.join();
    }

    int port() const { return port_; }
    std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }

private:
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    int port_ = 0;
};

} // namespace testsupport
