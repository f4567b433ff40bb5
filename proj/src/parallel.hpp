#pragma once

// Static-partition parallel loop. Each index is processed exactly once and
// writes only its own output slot, so results never depend on scheduling.
// Workers are persistent so thread_local coefficient caches survive between
// calls.

#include <algorithm>
#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace frdiff::detail {

class WorkerPool {
public:
    static WorkerPool& instance() {
        static WorkerPool pool;
        return pool;
    }

    /// Runs job(w) for w in [0, count); the caller takes w = 0. job must not throw.
    void run(int count, const std::function<void(int)>& job) {
        std::lock_guard<std::mutex> serial(run_mutex_);
        {
            std::lock_guard<std::mutex> lk(m_);
            while (static_cast<int>(threads_.size()) < count - 1) {
                const int id = static_cast<int>(threads_.size()) + 1;
                threads_.emplace_back([this, id] { loop(id); });
            }
            job_ = &job;
            count_ = count;
            pending_ = count - 1;
            ++generation_;
        }
        cv_.notify_all();
        in_pool() = true;
        job(0);
        in_pool() = false;
        std::unique_lock<std::mutex> lk(m_);
        done_.wait(lk, [this] { return pending_ == 0; });
        job_ = nullptr;
    }

    /// True on a thread currently executing pool work; nested loops run serially.
    static bool& in_pool() {
        thread_local bool flag = false;
        return flag;
    }

    ~WorkerPool() {
        {
            std::lock_guard<std::mutex> lk(m_);
            stop_ = true;
            ++generation_;
        }
        cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

private:
    WorkerPool() = default;

    void loop(int id) {
        in_pool() = true;
        unsigned long seen = 0;
        std::unique_lock<std::mutex> lk(m_);
        for (;;) {
            cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            if (id >= count_) continue;
            const std::function<void(int)>* job = job_;
            lk.unlock();
            (*job)(id);
            lk.lock();
            if (--pending_ == 0) done_.notify_all();
        }
    }

    std::mutex run_mutex_;
    std::mutex m_;
    std::condition_variable cv_;
    std::condition_variable done_;
    std::vector<std::thread> threads_;
    const std::function<void(int)>* job_ = nullptr;
    int count_ = 0;
    int pending_ = 0;
    unsigned long generation_ = 0;
    bool stop_ = false;
};

/// Calls fn(i) for i in [0, n). Exceptions are captured per index; the one
/// with the smallest index is rethrown after all workers finish.
template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    if (n <= 0) return;
    threads = std::clamp(threads, 1, n);
    if (WorkerPool::in_pool()) threads = 1;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    auto run = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        run(0, n);
    } else {
        const std::function<void(int)> job = [&](int w) {
            run(static_cast<int>(static_cast<long>(n) * w / threads),
                static_cast<int>(static_cast<long>(n) * (w + 1) / threads));
        };
        WorkerPool::instance().run(threads, job);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace frdiff::detail
