// Wire types mirroring the assessment service's JSON schemas.

export type Protocol = 'A1' | 'A2'
export type YesNo = 'yes' | 'no' | 'none'
export type PluralityLabel = 'singular' | 'plural' | 'none'
export type DefinitenessLabel = 'definite' | 'indefinite' | 'none'

export interface SpanRef {
  start: number
  end: number
  head: number
}

export interface ItemPayload {
  item_id: string
  protocol: Protocol
  sent_id: string
  tokens: string[]
  span: SpanRef
  np_text: string
  remaining: number
  // A1 only: the stored annotation phrased as the three questions.
  labels?: { plurality: string; definiteness: string }
  questions?: string[]
  context?: { before: string[][]; after: string[][] }
}

export interface DonePayload {
  done: true
  completed: number
}

export type NextResponse = ItemPayload | DonePayload

export function isDone(response: NextResponse): response is DonePayload {
  return (response as DonePayload).done === true
}

export interface AssessmentRecord {
  item_id: string
  annotator_id: string
  protocol: Protocol
  np_ok?: YesNo
  plurality_ok?: YesNo
  definiteness_ok?: YesNo
  plurality_label?: PluralityLabel
  definiteness_label?: DefinitenessLabel
  timestamp: number
}

const YES_NO: readonly string[] = ['yes', 'no', 'none']

/** Client-side mirror of the server's record invariants; returns problems. */
export function validateRecord(record: AssessmentRecord): string[] {
  const problems: string[] = []
  if (!record.item_id) problems.push('missing item_id')
  if (!record.annotator_id) problems.push('missing annotator_id')
  if (record.protocol === 'A1') {
    for (const field of ['np_ok', 'plurality_ok', 'definiteness_ok'] as const) {
      const value = record[field]
      if (value === undefined || !YES_NO.includes(value)) {
        problems.push(`A1 record needs yes/no/none for ${field}`)
      }
    }
    if (record.plurality_label !== undefined || record.definiteness_label !== undefined) {
      problems.push('A1 record must not carry direct labels')
    }
  } else if (record.protocol === 'A2') {
    if (!record.plurality_label || !['singular', 'plural', 'none'].includes(record.plurality_label)) {
      problems.push('A2 record needs a plurality label')
    }
    if (!record.definiteness_label || !['definite', 'indefinite', 'none'].includes(record.definiteness_label)) {
      problems.push('A2 record needs a definiteness label')
    }
    if (record.np_ok !== undefined || record.plurality_ok !== undefined
        || record.definiteness_ok !== undefined) {
      problems.push('A2 record must not carry yes/no answers')
    }
  } else {
    problems.push(`unknown protocol ${String(record.protocol)}`)
  }
  return problems
}
