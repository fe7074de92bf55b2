/*
 * homtoric: fans of homogeneous toric varieties.
 *
 * C interface over the exact-arithmetic core. Objects are opaque handles
 * created by the constructor functions and released with the
 * matching destroy function. Every function returns one of the HT_* status codes;
 * HT_OK is zero. Text results are written as NUL-terminated JSON into a
 * caller buffer: *out_len holds the buffer size on input and the required
 * size (including the terminator) on output. A buffer that is too small
 * yields HT_ERROR_INSUFFICIENT_BUFFER and nothing else changes, so callers
 * may query with out = NULL, *out_len = 0 first.
 */
#ifndef HOMTORIC_H_
#define HOMTORIC_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
  #define HT_API __declspec(dllexport)
#else
  #define HT_API __attribute__((visibility("default")))
#endif

enum {
  HT_OK = 0,
  HT_REJECTED = 1,       /* the fan is not the fan of a homogeneous toric variety */
  HT_INVALID_INPUT = 2,  /* malformed document or invalid fan */
  HT_ERROR_NULL_POINTER = -1,
  HT_ERROR_INSUFFICIENT_BUFFER = -2,
  HT_ERROR_INVALID_HANDLE = -3,
  HT_ERROR_INTERNAL = -4
};

typedef struct ht_fan_struct* ht_fan_t;
typedef struct ht_certificate_struct* ht_certificate_t;
typedef struct ht_classification_struct* ht_classification_t;

HT_API const char* ht_status_name(int status);

/* Detail message of the last failing call on this thread ("" if none). */
HT_API const char* ht_last_error(void);

/* Fans */
HT_API int ht_fan_from_json(ht_fan_t* fan, const char* json);
HT_API int ht_fan_punctured(ht_fan_t* fan, const size_t* sizes, size_t group_count);
HT_API int ht_fan_to_json(ht_fan_t fan, char* out, size_t* out_len);
HT_API int ht_fan_ray_count(ht_fan_t fan, size_t* count);
HT_API int ht_fan_cone_count(ht_fan_t fan, size_t* count);
HT_API int ht_fan_equal(ht_fan_t a, ht_fan_t b, int* equal);
HT_API int ht_fan_destroy(ht_fan_t fan);

/* Validation report for a fan document. Returns HT_OK for a valid fan and
 * HT_INVALID_INPUT otherwise; the report is written in both cases. */
HT_API int ht_fan_validate_json(const char* json, char* out, size_t* out_len);

/* Quotient of X(sizes) by the subgroup cut out by `relations`, a row-major
 * relation_count x group_count integer matrix (NULL allowed when
 * relation_count is 0). The returned fan is in canonical ray order and the
 * certificate refers to it. */
HT_API int ht_quotient(ht_fan_t* fan, ht_certificate_t* certificate, const size_t* sizes,
                       size_t group_count, const int64_t* relations, size_t relation_count);

/* Classification */
HT_API int ht_classify(ht_classification_t* result, ht_fan_t fan);
/* Classifies a fan document. A document whose cones are not simplicial is a
 * NOT_SIMPLICIAL rejection rather than invalid input. */
HT_API int ht_classify_json(ht_classification_t* result, const char* json);
HT_API int ht_classification_accepted(ht_classification_t result, int* accepted);
/* Copies the certificate out of an accepting result (HT_REJECTED otherwise). */
HT_API int ht_classification_certificate(ht_classification_t result, ht_certificate_t* certificate);
/* Certificate document on acceptance, rejection document otherwise. */
HT_API int ht_classification_to_json(ht_classification_t result, char* out, size_t* out_len);
HT_API int ht_classification_destroy(ht_classification_t result);

/* Certificates */
HT_API int ht_certificate_from_json(ht_certificate_t* certificate, const char* json);
HT_API int ht_certificate_to_json(ht_certificate_t certificate, char* out, size_t* out_len);
/* HT_OK if the certificate rebuilds `fan`, HT_REJECTED otherwise. */
HT_API int ht_certificate_verify(ht_certificate_t certificate, ht_fan_t fan);
HT_API int ht_certificate_destroy(ht_certificate_t certificate);

/* Property report document of the variety described by a certificate. */
HT_API int ht_properties_to_json(ht_certificate_t certificate, char* out, size_t* out_len);

/* Randomized quotient/classify/verify self test; writes the report document
 * and returns HT_OK when every trial passed, HT_REJECTED otherwise. */
HT_API int ht_roundtrip(uint64_t trials, uint64_t seed, size_t max_groups, size_t max_group_size,
                        char* out, size_t* out_len);

#ifdef __cplusplus
}
#endif

#endif /* HOMTORIC_H_ */
