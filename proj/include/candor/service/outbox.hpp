#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "candor/domain/types.hpp"

namespace candor::service {

struct OutboxMessage {
    std::string message_id;
    std::string recipient;
    std::string subject;
    std::string body;
    Timestamp created_at{};
    bool delivered = false;

    bool operator==(const OutboxMessage&) const = default;
};

/// Append-only JSON-lines mail outbox standing in for email transport.
///
/// Message lines are never rewritten. Delivery is recorded by a later
/// {"delivered": "<message_id>"} marker line.
class Outbox {
public:
    explicit Outbox(std::filesystem::path file);

    /// False (and nothing written) if message_id is already present.
    bool append(const OutboxMessage& message);
    bool mark_delivered(const std::string& message_id);

    [[nodiscard]] bool contains(const std::string& message_id) const;
    [[nodiscard]] std::vector<OutboxMessage> messages() const;
    /// Raw file lines, for byte-level comparisons.
    [[nodiscard]] std::vector<std::string> lines() const;
    [[nodiscard]] const std::filesystem::path& path() const noexcept { return file_; }

    void seal();

private:
    void write_line(const std::string& line);

    std::filesystem::path file_;
    mutable std::mutex mutex_;
    std::ofstream out_;
    std::vector<OutboxMessage> messages_;
    std::set<std::string> ids_;
    bool sealed_ = false;
};

}  // namespace candor::service
