/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires 0 <= i < strlen(s);
  @  @ decreases i;
  @  @ ensures s[i] != '\0';
  @  @/
  @ void nonzero_at(char *s, size_t i)
  @ {
  @   if (i > 0)
  @     nonzero_at(s + 1, i - 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires 0 <= v1 <= v2 <= strlen(s);
  @  @ ensures \forall integer v; v1 <= v < v2 ==> s[v] != '\0';
  @  @/
  @ void nonzero_range(char *s, size_t v1, size_t v2)
  @ {
  @   /@ loop invariant v1 <= i <= v2;
  @    @ loop invariant \forall size_t j; v1 <= j < i ==> s[j] != '\0';
  @    @ loop variant v2 - i;
  @    @/
  @   for (size_t i = v1; i < v2; i++)
  @     nonzero_at(s, i);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires 0 <= v <= 1000;
  @  @ ensures (v + v) % 2 == 0;
  @  @/
  @ void even_double(int v)
  @ {
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires 0 <= v1 <= v2 <= 1001;
  @  @ ensures \forall integer v; v1 <= v < v2 ==> (v + v) % 2 == 0;
  @  @/
  @ void even_double_range(int v1, int v2)
  @ {
  @   /@ loop invariant v1 <= i <= v2;
  @    @ loop invariant \forall int j; v1 <= j < i ==> (j + j) % 2 == 0;
  @    @ loop variant v2 - i;
  @    @/
  @   for (int i = v1; i < v2; i++)
  @     even_double(i);
  @ }
  @*/
