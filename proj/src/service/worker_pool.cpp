#include "candor/service/worker_pool.hpp"

namespace candor::service {

WorkerPool::WorkerPool(std::size_t threads) {
    threads_.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) threads_.emplace_back([this] { run(); });
}

WorkerPool::~WorkerPool() {
    stop();
    for (auto& t : threads_) {
        if (t.joinable()) t.join();
    }
}

void WorkerPool::submit(Task task) {
    {
        std::lock_guard lock(mutex_);
        if (stopping_) return;
        queue_.push_back(std::move(task));
    }
    work_cv_.notify_one();
}

void WorkerPool::wait_idle() {
    std::unique_lock lock(mutex_);
    idle_cv_.wait(lock, [this] { return (queue_.empty() || stopping_) && running_ == 0; });
}

void WorkerPool::stop() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
        queue_.clear();
    }
    work_cv_.notify_all();
    idle_cv_.notify_all();
}

void WorkerPool::run() {
    for (;;) {
        Task task;
        {
            std::unique_lock lock(mutex_);
            work_cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
            if (stopping_) return;
            task = std::move(queue_.front());
            queue_.pop_front();
            ++running_;
        }
        try {
            task();
        } catch (...) {
            // Tasks report their own failures; the worker keeps running.
        }
        {
            std::lock_guard lock(mutex_);
            --running_;
        }
        idle_cv_.notify_all();
    }
}

}  // namespace candor::service
