#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace candor::service {

/// Fixed-size FIFO thread pool. submit() never blocks on task execution.
class WorkerPool {
public:
    using Task = std::function<void()>;

    explicit WorkerPool(std::size_t threads);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    void submit(Task task);
    /// Blocks until the queue is empty and no task is running.
    void wait_idle();
    /// Stops accepting work; queued tasks are dropped, running ones finish.
    void stop();

    [[nodiscard]] std::size_t size() const noexcept { return threads_.size(); }

private:
    void run();

    std::mutex mutex_;
    std::condition_variable work_cv_;
    std::condition_variable idle_cv_;
    std::deque<Task> queue_;
    std::size_t running_ = 0;
    bool stopping_ = false;
    std::vector<std::thread> threads_;
};

}  // namespace candor::service
