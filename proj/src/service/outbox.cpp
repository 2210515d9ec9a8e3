#include "candor/service/outbox.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace candor::service {

using nlohmann::json;

Outbox::Outbox(std::filesystem::path file) : file_(std::move(file)) {
    if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
    std::uintmax_t good = 0;
    bool torn = false;
    std::ifstream in(file_, std::ios::binary);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() && !in.eof()) {
            ++good;
            continue;
        }
        const json doc = json::parse(line, nullptr, false);
        if (in.eof() || doc.is_discarded()) {
            torn = !line.empty();
            break;
        }
        good += line.size() + 1;
        if (doc.contains("delivered") && doc["delivered"].is_string()) {
            const auto id = doc["delivered"].get<std::string>();
            for (auto& m : messages_) {
                if (m.message_id == id) m.delivered = true;
            }
            continue;
        }
        OutboxMessage m;
        m.message_id = doc.at("message_id").get<std::string>();
        m.recipient = doc.at("recipient").get<std::string>();
        m.subject = doc.at("subject").get<std::string>();
        m.body = doc.at("body").get<std::string>();
        m.created_at = parse_timestamp(doc.at("created_at").get<std::string>());
        m.delivered = doc.value("delivered", false);
        ids_.insert(m.message_id);
        messages_.push_back(std::move(m));
    }
    in.close();
    if (torn) std::filesystem::resize_file(file_, good);
    out_.open(file_, std::ios::app);
    if (!out_) throw std::runtime_error("cannot open outbox " + file_.string());
}

void Outbox::write_line(const std::string& line) {
    out_ << line << '\n';
    out_.flush();
    if (!out_) throw std::runtime_error("outbox write failed");
}

bool Outbox::append(const OutboxMessage& message) {
    if (message.body.empty()) throw std::invalid_argument("outbox message body is empty");
    std::lock_guard lock(mutex_);
    if (sealed_ || ids_.count(message.message_id)) return false;
    write_line(json{{"message_id", message.message_id},
                    {"recipient", message.recipient},
                    {"subject", message.subject},
                    {"body", message.body},
                    {"created_at", format_timestamp(message.created_at)},
                    {"delivered", false}}
                   .dump());
    ids_.insert(message.message_id);
    messages_.push_back(message);
    messages_.back().delivered = false;
    return true;
}

bool Outbox::mark_delivered(const std::string& message_id) {
    std::lock_guard lock(mutex_);
    if (sealed_) return false;
    auto it = std::find_if(messages_.begin(), messages_.end(), [&](const auto& m) { return m.message_id == message_id; });
    if (it == messages_.end() || it->delivered) return false;
    write_line(json{{"delivered", message_id}}.dump());
    it->delivered = true;
    return true;
}

bool Outbox::contains(const std::string& message_id) const {
    std::lock_guard lock(mutex_);
    return ids_.count(message_id) != 0;
}

std::vector<OutboxMessage> Outbox::messages() const {
    std::lock_guard lock(mutex_);
    return messages_;
}

std::vector<std::string> Outbox::lines() const {
    std::lock_guard lock(mutex_);
    std::ifstream in(file_);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

void Outbox::seal() {
    std::lock_guard lock(mutex_);
    sealed_ = true;
    out_.close();
}

}  // namespace candor::service
