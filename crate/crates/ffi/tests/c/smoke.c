/*
 * Licensed under the Apache License, Version 2.0 (the "License"); you may
 * not use this file except in compliance with the License. You may obtain
 * a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */

#include <stdio.h>
#include <string.h>

#include "semicover.h"

#define CHECK(cond)                                                    \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
                    sc_last_error());                                  \
            return 1;                                                  \
        }                                                              \
    } while (0)

int main(void) {
    size_t six = 6, three = 3;
    ScGraph *g = NULL, *h = NULL;
    CHECK(sc_graph_generate("cycle", &six, 1, 0, &g) == SC_STATUS_OK);
    CHECK(sc_graph_generate("cycle", &three, 1, 0, &h) == SC_STATUS_OK);
    CHECK(sc_graph_vertex_count(g) == 6);

    ScVerdict verdict = SC_VERDICT_UNKNOWN;
    ScCover *w = NULL;
    CHECK(sc_solve(g, h, NULL, 0, &verdict, &w) == SC_STATUS_OK);
    CHECK(verdict == SC_VERDICT_YES && w != NULL);

    char *text = NULL;
    CHECK(sc_cover_to_json(w, g, h, &text) == SC_STATUS_OK);
    CHECK(strstr(text, "vmap") != NULL);
    ScCover *back = NULL;
    CHECK(sc_cover_parse(text, g, h, &back) == SC_STATUS_OK);
    sc_string_free(text);

    ScVerdict ok = SC_VERDICT_NO;
    CHECK(sc_verify(back, g, h, NULL, false, &ok) == SC_STATUS_OK);
    CHECK(ok == SC_VERDICT_YES);

    size_t count = 0;
    CHECK(sc_count_covers(g, h, NULL, false, 0, 0, &count) == SC_STATUS_OK);
    CHECK(count == 6);

    ScGraph *bad = NULL;
    CHECK(sc_graph_parse("{\"vertices\": [", &bad) == SC_STATUS_PARSE);
    CHECK(bad == NULL && strlen(sc_last_error()) > 0);

    sc_cover_free(back);
    sc_cover_free(w);
    sc_graph_free(g);
    sc_graph_free(h);
    printf("ok %s\n", sc_version());
    return 0;
}
