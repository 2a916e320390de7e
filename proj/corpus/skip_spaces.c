/*@ assigns \nothing;
  @ ensures \result != 0 <==> is_space(c);
  @*/
int isspace(char c)
{
	return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

/*@ ghost
  @ /@ requires valid_str(s);
  @  @ requires is_space(*s);
  @  @ assigns \nothing;
  @  @ ensures \result == s + 1;
  @  @ ensures valid_str(\result);
  @  @ ensures skip_spaces(\result) == skip_spaces(s);
  @  @/
  @ char *skip_one(char *s)
  @ {
  @   return s + 1;
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures s <= skip_spaces(s) <= s + strlen(s);
  @  @/
  @ void skip_spaces_in_range(char *s)
  @ {
  @   if (*s == ' ' || *s == '\t' || *s == '\n' || *s == '\v' || *s == '\f' || *s == '\r')
  @     skip_spaces_in_range(s + 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ decreases strlen(s);
  @  @ ensures valid_str(skip_spaces(s)) && !is_space(*skip_spaces(s));
  @  @/
  @ void skip_spaces_stops(char *s)
  @ {
  @   if (*s == ' ' || *s == '\t' || *s == '\n' || *s == '\v' || *s == '\f' || *s == '\r')
  @     skip_spaces_stops(s + 1);
  @ }
  @*/

/*@ ghost
  @ /@ lemma
  @  @ requires valid_str(s);
  @  @ requires 0 <= i < skip_spaces(s) - s;
  @  @ decreases i;
  @  @ ensures is_space(s[i]);
  @  @/
  @ void skip_spaces_skipped(char *s, size_t i)
  @ {
  @   if (i > 0 && (*s == ' ' || *s == '\t' || *s == '\n' || *s == '\v' || *s == '\f' || *s == '\r'))
  @     skip_spaces_skipped(s + 1, i - 1);
  @ }
  @*/

/*@ requires valid_str(str);
  @ assigns \nothing;
  @ ensures \result == skip_spaces(str);
  @ ensures \at(str, Pre) <= \result <= \at(str, Pre) + strlen(\at(str, Pre));
  @ ensures !is_space(*\result);
  @*/
char *skip_spaces(const char *str)
{
	/*@ loop invariant valid_str(str);
	  @ loop invariant \base_addr(str) == \base_addr(\at(str, Pre));
	  @ loop invariant \at(str, Pre) <= str;
	  @ loop invariant strlen(\at(str, Pre)) == str - \at(str, Pre) + strlen(str);
	  @ loop invariant skip_spaces(str) == skip_spaces(\at(str, Pre));
	  @ loop variant strlen(str);
	  @*/
	while (isspace(*str))
		++str;
	return str;
}
