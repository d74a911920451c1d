#pragma once

#include <cstddef>
#include <vector>

namespace gridcode {

/// Counts live auxiliary array entries (of any element type) and the peak.
/// Not thread-safe; one meter per computation.
class StorageMeter {
 public:
  void acquire(std::size_t entries) noexcept {
    current_ += entries;
    if (current_ > peak_) peak_ = current_;
  }
  void release(std::size_t entries) noexcept { current_ -= entries; }

  std::size_t current() const noexcept { return current_; }
  std::size_t peak() const noexcept { return peak_; }

 private:
  std::size_t current_ = 0;
  std::size_t peak_ = 0;
};

/// std::vector whose size is reported to an optional meter for its lifetime.
template <typename T>
class MeteredArray {
 public:
  MeteredArray(std::size_t size, T fill, StorageMeter* meter) : data_(size, fill), meter_(meter) {
    if (meter_) meter_->acquire(size);
  }
  MeteredArray(const MeteredArray&) = delete;
  MeteredArray& operator=(const MeteredArray&) = delete;
  MeteredArray(MeteredArray&& other) noexcept : data_(std::move(other.data_)), meter_(other.meter_) {
    other.meter_ = nullptr;
  }
  MeteredArray& operator=(MeteredArray&& other) noexcept {
    if (this != &other) {
      if (meter_) meter_->release(data_.size());
      data_ = std::move(other.data_);
      meter_ = other.meter_;
      other.meter_ = nullptr;
    }
    return *this;
  }
  ~MeteredArray() {
    if (meter_) meter_->release(data_.size());
  }

  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }
  std::size_t size() const noexcept { return data_.size(); }
  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }

 private:
  std::vector<T> data_;
  StorageMeter* meter_;
};

}  // namespace gridcode
