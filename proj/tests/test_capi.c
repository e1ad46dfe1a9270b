#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "simclass/simclass.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                               \
        }                                                             \
    } while (0)

static int count_lines(const char* line, void* user)
{
    (void)line;
    ++*(int*)user;
    return 0;
}

int main(void)
{
    simclass_ring* ring = NULL;
    EXPECT(simclass_ring_parse("z:2:2", &ring) == SIMCLASS_OK);
    EXPECT(simclass_ring_parse("z:6:2", &ring) == SIMCLASS_ERR_BAD_PARAMS || simclass_ring_parse("z:6:2", &ring) == SIMCLASS_ERR_PARSE);
    EXPECT(strlen(simclass_last_error()) > 0);

    char* s = NULL;
    EXPECT(simclass_count(3, SIMCLASS_GROUP_GL, 2, 2, &s) == SIMCLASS_OK);
    EXPECT(s && strcmp(s, "60") == 0);
    simclass_string_free(s);

    EXPECT(simclass_gf(3, SIMCLASS_GROUP_M, 2, 4, &s) == SIMCLASS_OK);
    EXPECT(s && strcmp(s, "1\n14\n144\n1296\n") == 0);
    simclass_string_free(s);

    uint64_t e[9] = {0, 1, 0, 0, 0, 1, 1, 2, 3};
    simclass_mat* a = NULL;
    EXPECT(simclass_mat_create(ring, 3, e, &a) == SIMCLASS_OK);
    simclass_mat* b = NULL;
    EXPECT(simclass_mat_parse("[[0,0,1],[1,0,2],[0,1,3]]", ring, &b) == SIMCLASS_OK);
    int similar = -1;
    EXPECT(simclass_is_similar(a, b, &similar, &s) == SIMCLASS_OK);
    EXPECT(similar == 1);
    EXPECT(s && strstr(s, "\"witness\":[[") != NULL);
    simclass_string_free(s);

    EXPECT(simclass_canon(a, &s) == SIMCLASS_OK);
    EXPECT(s && strstr(s, "\"cyclic\"") != NULL);
    simclass_string_free(s);

    EXPECT(simclass_centralizer_order(a, &s) == SIMCLASS_OK);
    simclass_string_free(s);

    int lines = 0;
    EXPECT(simclass_enumerate(ring, 3, SIMCLASS_GROUP_GL, 1000, count_lines, &lines) == SIMCLASS_OK);
    EXPECT(lines == 60);
    EXPECT(simclass_enumerate(ring, 3, SIMCLASS_GROUP_M, 10, count_lines, &lines) == SIMCLASS_ERR_BUDGET);

    simclass_oracle_options o;
    simclass_oracle_options_default(&o);
    EXPECT(simclass_oracle_census(ring, 3, SIMCLASS_GROUP_M, &o, 0, &s) == SIMCLASS_OK);
    EXPECT(s && strstr(s, "\"classes\":144") != NULL);
    simclass_string_free(s);
    o.state_budget = 100;
    EXPECT(simclass_oracle_census(ring, 3, SIMCLASS_GROUP_M, &o, 0, &s) == SIMCLASS_ERR_BUDGET);

    simclass_mat* bad = NULL;
    EXPECT(simclass_mat_parse("[[1,2],[3,4]]", NULL, &bad) == SIMCLASS_ERR_PARSE);
    EXPECT(simclass_mat_parse("[[1,2],[3,4]]", ring, &bad) == SIMCLASS_ERR_BAD_PARAMS);
    EXPECT(simclass_mat_parse("[[1,2],[3,0]]", ring, &bad) == SIMCLASS_OK);
    EXPECT(simclass_is_similar(a, bad, &similar, NULL) == SIMCLASS_ERR_BAD_PARAMS || similar == 0);

    simclass_mat_free(bad);
    simclass_mat_free(a);
    simclass_mat_free(b);
    simclass_ring_free(ring);
    if (failures) fprintf(stderr, "%d failures\n", failures);
    else printf("C API checks passed\n");
    return failures ? 1 : 0;
}
