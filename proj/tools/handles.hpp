#pragma once

// Owning wrappers over the C handles, plus status checking.

#include <memory>
#include <stdexcept>
#include <string>

#include "ifslab/ifslab.h"

namespace ifscli {

/// Library failure carrying the process exit code it maps to.
struct ApiError : std::runtime_error {
    int status;
    ApiError(int s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

inline void check(int status, const char* what) {
    if (status != IFSLAB_OK)
        throw ApiError(status, std::string(what) + ": " + ifslab_status_name(status) + ": " + ifslab_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};

using Ifs = std::unique_ptr<ifslab_ifs, Deleter<ifslab_ifs, ifslab_ifs_free>>;
using Map = std::unique_ptr<ifslab_map, Deleter<ifslab_map, ifslab_map_free>>;
using Set = std::unique_ptr<ifslab_set, Deleter<ifslab_set, ifslab_set_free>>;
using Matrix = std::unique_ptr<ifslab_matrix, Deleter<ifslab_matrix, ifslab_matrix_free>>;
using Stream = std::unique_ptr<ifslab_stream, Deleter<ifslab_stream, ifslab_stream_free>>;
using Measure = std::unique_ptr<ifslab_measure, Deleter<ifslab_measure, ifslab_measure_free>>;
using Hat = std::unique_ptr<ifslab_hat, Deleter<ifslab_hat, ifslab_hat_free>>;

}  // namespace ifscli
